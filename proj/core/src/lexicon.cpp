#include "ccgsem/lexicon.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "ccgsem/errors.hpp"

namespace ccgsem {

const char* lexicon_mode_name(LexiconMode m) {
  switch (m) {
    case LexiconMode::Gold: return "gold";
    case LexiconMode::WordConstrained: return "word_constrained";
    case LexiconMode::PosConstrained: return "pos_constrained";
    case LexiconMode::Induced: return "induced";
  }
  return "?";
}

namespace {

std::set<Category> parse_category_list(const std::string& text, int line_no) {
  std::set<Category> cats;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // trim
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw LexiconError("empty category at line " + std::to_string(line_no));
    item = item.substr(b, e - b + 1);
    try {
      cats.insert(parse_category(item));
    } catch (const CategoryParseError& ex) {
      throw LexiconError("line " + std::to_string(line_no) + ": bad category '" +
                         item + "': " + ex.what());
    }
  }
  if (cats.empty())
    throw LexiconError("no categories at line " + std::to_string(line_no));
  return cats;
}

}  // namespace

RankedEntries load_ranked_lexicon_file(std::istream& in) {
  RankedEntries out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw LexiconError("line " + std::to_string(line_no) +
                         ": expected `key<TAB>categories`");
    std::string key = line.substr(0, tab);
    out.emplace_back(key, parse_category_list(line.substr(tab + 1), line_no));
  }
  return out;
}

std::map<std::string, std::set<Category>> load_lexicon_file(std::istream& in) {
  std::map<std::string, std::set<Category>> m;
  for (auto& [key, cats] : load_ranked_lexicon_file(in))
    m[key].insert(cats.begin(), cats.end());
  return m;
}

namespace {
std::string lexicon_category_name(const Category& c) {
  std::string s = c.str();
  return s == "," ? "comma" : s;
}
}  // namespace

void save_lexicon_file(std::ostream& out,
                       const std::map<std::string, std::set<Category>>& m) {
  for (const auto& [key, cats] : m) {
    out << key << '\t';
    bool first = true;
    for (const auto& c : cats) {
      if (!first) out << ',';
      first = false;
      out << lexicon_category_name(c);
    }
    out << '\n';
  }
}

Lexicon constrain_lexicon(const Lexicon& lex, const RankedEntries& ranked,
                          int k) {
  if (k < 0) throw LexiconError("constrain_lexicon: k must be >= 0");
  if (k == 0) return lex;
  Lexicon out = lex;
  out.mode = LexiconMode::WordConstrained;
  out.word_entries.clear();
  std::size_t n = std::min<std::size_t>(k, ranked.size());
  for (std::size_t i = 0; i < n; ++i)
    out.word_entries[ranked[i].first] = ranked[i].second;
  return out;
}

}  // namespace ccgsem
