#include <doctest.h>

#include <sstream>

#include "ccgsem/bow.hpp"
#include "ccgsem/errors.hpp"

using namespace ccgsem;

namespace {

const char* kToyKb = R"([schema]
business.acquisition: acquiring_company, company_acquired, date
people.employment: employee, employer

[types]
Google: company
Nest: company
DeepMind: company
Ada: person
2014: date

[events]
a1	business.acquisition	acquiring_company=Google;company_acquired=Nest;date=2014
a2	business.acquisition	acquiring_company=Google;company_acquired=DeepMind
e1	people.employment	employee=Ada;employer=Nest
)";

KnowledgeBase toy() {
  std::stringstream ss(kToyKb);
  return load_kb(ss);
}

CorpusRecord cloze(const std::vector<std::tuple<const char*, const char*>>&
                       words,  // surface, entity-or-""
                   int blank_index, const char* answer) {
  CorpusRecord r;
  r.id = "r";
  r.answer = answer;
  r.blank_index = blank_index;
  int ents = 1;  // the blank
  int i = 0;
  for (const auto& [surface, entity] : words) {
    Token t;
    t.surface = surface;
    t.pos = "NN";
    if (i == blank_index) {
      t.surface = "__blank__";
      t.is_blank = true;
    } else if (entity[0]) {
      t.entity = entity;
      ++ents;
    }
    r.tokens.push_back(t);
    ++i;
  }
  r.entity_count = ents;
  return r;
}

}  // namespace

TEST_CASE("bow features: lowercased unigrams and side bigrams") {
  auto rec = cloze({{"Google", "Google"}, {"acquired", ""}, {"X", ""}}, 2, "Nest");
  auto f = bow_features(rec, 0);  // other entity = token 0
  CHECK(f.at("bias") == 1.0);
  CHECK(f.at("w:google") == 1.0);
  CHECK(f.at("w:acquired") == 1.0);
  CHECK(f.count("w:__blank__") == 0);
  CHECK(f.at("ws:acquired|R") == 1.0);  // right of the other entity
  CHECK(f.count("ws:google|L") == 0);   // the anchor itself has no bigram
}

TEST_CASE("pair label comes from the first KB link, else NULL") {
  KnowledgeBase kb = toy();
  CHECK(bow_pair_label("Nest", "Google", kb) ==
        "business.acquisition|company_acquired|acquiring_company");
  CHECK(bow_pair_label("Google", "Nest", kb) ==
        "business.acquisition|acquiring_company|company_acquired");
  CHECK(bow_pair_label("Ada", "Google", kb) == kBowNull);
}

TEST_CASE("bow_query conjoins non-NULL pairs around the target") {
  CorpusRecord rec;
  rec.blank_index = 0;
  auto q = bow_query(
      rec, {{"Google", "business.acquisition|company_acquired|acquiring_company"},
            {"2014", kBowNull}});
  REQUIRE(q.has_value());
  CHECK(q->source.nodes.size() == 3);  // target, event, Google
  CHECK(q->source.edges.size() == 2);
  KnowledgeBase kb = toy();
  auto answers = execute(*q, kb, /*strict_types=*/false);
  REQUIRE(!answers.empty());
  CHECK(answers.front() == "DeepMind");  // alphabetical tie over {DeepMind, Nest}

  CHECK(!bow_query(rec, {{"Google", kBowNull}}).has_value());
  CHECK_THROWS_AS(bow_query(rec, {{"Google", "malformed"}}), QueryError);
}

TEST_CASE("bow end-to-end learns the acquisition direction") {
  KnowledgeBase kb = toy();
  // train: "<blank> acquired E" with the acquirer blanked, and
  // "E acquired <blank>" with the acquiree blanked
  std::vector<CorpusRecord> train = {
      cloze({{"", ""}, {"acquired", ""}, {"Nest", "Nest"}}, 0, "Google"),
      cloze({{"", ""}, {"acquired", ""}, {"DeepMind", "DeepMind"}}, 0, "Google"),
      cloze({{"Google", "Google"}, {"bought", ""}, {"", ""}}, 2, "Nest"),
      cloze({{"Google", "Google"}, {"bought", ""}, {"", ""}}, 2, "DeepMind"),
      cloze({{"", ""}, {"works", ""}, {"at", ""}, {"Nest", "Nest"}}, 0, "Ada"),
  };
  BowConfig cfg;
  cfg.epochs = 10;
  auto model = train_bow(train, kb, cfg);
  CHECK(model.labels.size() >= 3);  // two directions + employment or NULL

  auto blank_acquirer =
      cloze({{"", ""}, {"acquired", ""}, {"Nest", "Nest"}}, 0, "Google");
  auto got = predict_bow(blank_acquirer, kb, model);
  REQUIRE(got.has_value());
  CHECK(*got == "Google");

  auto blank_employee =
      cloze({{"", ""}, {"works", ""}, {"at", ""}, {"Nest", "Nest"}}, 0, "Ada");
  auto got2 = predict_bow(blank_employee, kb, model);
  REQUIRE(got2.has_value());
  CHECK(*got2 == "Ada");
}

TEST_CASE("bow model file round-trips and training is deterministic") {
  KnowledgeBase kb = toy();
  std::vector<CorpusRecord> train = {
      cloze({{"", ""}, {"acquired", ""}, {"Nest", "Nest"}}, 0, "Google"),
      cloze({{"Google", "Google"}, {"bought", ""}, {"", ""}}, 2, "Nest"),
  };
  BowConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 5;
  auto m1 = train_bow(train, kb, cfg);
  auto m2 = train_bow(train, kb, cfg);
  std::stringstream s1, s2;
  m1.save(s1);
  m2.save(s2);
  CHECK(s1.str() == s2.str());

  auto back = BowModel::load(s1);
  CHECK(back.weights == m1.weights);
  CHECK(back.averaged == m1.averaged);
  CHECK(back.labels == m1.labels);
  CHECK(back.epochs_trained == 3);
  CHECK(back.seed == 5);
}

TEST_CASE("bow training requires pair examples") {
  KnowledgeBase kb = toy();
  CHECK_THROWS_AS(train_bow({}, kb, {}), TrainError);
  // a record whose only entity is the blank has no pairs
  auto rec = cloze({{"", ""}, {"said", ""}, {"hi", ""}}, 0, "Google");
  CHECK_THROWS_AS(train_bow({rec}, kb, {}), TrainError);
}
