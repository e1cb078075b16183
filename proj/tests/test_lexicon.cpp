#include <doctest.h>

#include <sstream>

#include "ccgsem/errors.hpp"
#include "ccgsem/lexicon.hpp"

using namespace ccgsem;

TEST_CASE("lexicon file round-trip") {
  std::map<std::string, std::set<Category>> m{
      {"acquired", {parse_category("(S\\NP)/NP")}},
      {"in",
       {parse_category("PP/NP"), parse_category("((S\\NP)\\(S\\NP))/NP")}},
      {",", {parse_category("conj"), parse_category("comma")}}};
  std::stringstream ss;
  save_lexicon_file(ss, m);
  auto back = load_lexicon_file(ss);
  CHECK(back == m);
}

TEST_CASE("comma atom is written as a word in lexicon files") {
  std::map<std::string, std::set<Category>> m{{",", {parse_category(",")}}};
  std::stringstream ss;
  save_lexicon_file(ss, m);
  CHECK(ss.str().find("\tcomma") != std::string::npos);
}

TEST_CASE("ranked load preserves file order") {
  std::stringstream ss("b\tNP\na\tS\n# comment\n\nc\tN,NP\n");
  auto ranked = load_ranked_lexicon_file(ss);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].first == "b");
  CHECK(ranked[1].first == "a");
  CHECK(ranked[2].first == "c");
  CHECK(ranked[2].second.size() == 2);
}

TEST_CASE("load errors") {
  std::stringstream no_tab("word NP\n");
  CHECK_THROWS_AS(load_lexicon_file(no_tab), LexiconError);
  std::stringstream bad_cat("word\tNP|S\n");
  CHECK_THROWS_AS(load_lexicon_file(bad_cat), LexiconError);
  std::stringstream empty_cats("word\t\n");
  CHECK_THROWS_AS(load_lexicon_file(empty_cats), LexiconError);
}

TEST_CASE("constrain_lexicon") {
  Lexicon lex;
  lex.mode = LexiconMode::Induced;
  RankedEntries ranked{{"a", {parse_category("NP")}},
                       {"b", {parse_category("S")}}};

  SUBCASE("k = 0 is the identity") {
    Lexicon out = constrain_lexicon(lex, ranked, 0);
    CHECK(out.mode == LexiconMode::Induced);
    CHECK(out.word_entries.empty());
  }
  SUBCASE("top-k keys get exactly their sets") {
    Lexicon out = constrain_lexicon(lex, ranked, 1);
    CHECK(out.mode == LexiconMode::WordConstrained);
    REQUIRE(out.word_entries.size() == 1);
    CHECK(out.word_entries.count("a") == 1);
  }
  SUBCASE("k beyond the list clamps") {
    Lexicon out = constrain_lexicon(lex, ranked, 99);
    CHECK(out.word_entries.size() == 2);
  }
  SUBCASE("negative k throws") {
    CHECK_THROWS_AS(constrain_lexicon(lex, ranked, -1), LexiconError);
  }
}
