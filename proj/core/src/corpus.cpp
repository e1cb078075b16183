#include "ccgsem/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ccgsem/errors.hpp"

namespace ccgsem {

namespace {

using nlohmann::json;

CorpusRecord parse_record(const json& j) {
  CorpusRecord r;
  r.id = j.at("id").get<std::string>();
  for (const auto& t : j.at("tokens")) {
    Token tok;
    tok.surface = t.at(0).get<std::string>();
    tok.pos = t.at(1).get<std::string>();
    if (t.size() > 2 && !t.at(2).is_null())
      tok.entity = t.at(2).get<std::string>();
    tok.is_blank = tok.surface == "__blank__";
    r.tokens.push_back(std::move(tok));
  }
  r.blank_index = j.at("blank_index").get<int>();
  r.answer = j.at("answer").get<std::string>();
  r.entity_count = j.at("entity_count").get<int>();
  if (j.contains("supertags"))
    for (const auto& s : j.at("supertags"))
      r.supertags.push_back(s.get<std::string>());

  int blanks = 0;
  for (const auto& t : r.tokens)
    if (t.is_blank) ++blanks;
  if (blanks != 1) throw CorpusError("expected exactly one blank token");
  if (r.blank_index < 0 || r.blank_index >= static_cast<int>(r.tokens.size()) ||
      !r.tokens[r.blank_index].is_blank)
    throw CorpusError("blank_index does not point at the blank token");
  if (r.answer.empty()) throw CorpusError("missing answer");
  for (const auto& t : r.tokens)
    if (t.entity && *t.entity == r.answer)
      throw CorpusError("answer entity still present in the sentence");
  if (!r.supertags.empty() && r.supertags.size() != r.tokens.size())
    throw CorpusError("supertags do not cover every token");
  if (r.entity_count < 1) throw CorpusError("bad entity_count");
  return r;
}

}  // namespace

LoadReport load_corpus(std::istream& in) {
  LoadReport rep;
  std::string line;
  long line_no = 0, attempted = 0;
  std::set<std::string> types, entities;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++attempted;
    std::string id = "line " + std::to_string(line_no);
    try {
      json j = json::parse(line);
      if (j.contains("id")) id = j["id"].get<std::string>();
      CorpusRecord r = parse_record(j);
      rep.stats.tokens += static_cast<long>(r.tokens.size());
      for (const auto& t : r.tokens) {
        types.insert(t.surface);
        if (t.entity) entities.insert(*t.entity);
      }
      entities.insert(r.answer);
      rep.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      rep.rejected.push_back(id + ": " + e.what());
    } catch (const CorpusError& e) {
      rep.rejected.push_back(id + ": " + e.what());
    }
  }
  rep.stats.sentences = static_cast<long>(rep.records.size());
  rep.stats.word_types = static_cast<long>(types.size());
  rep.stats.entities = static_cast<long>(entities.size());
  if (attempted > 0 &&
      static_cast<double>(rep.rejected.size()) > 0.01 * attempted) {
    std::string msg = "too many bad records (" +
                      std::to_string(rep.rejected.size()) + "/" +
                      std::to_string(attempted) + ")";
    for (std::size_t i = 0; i < rep.rejected.size() && i < 5; ++i)
      msg += "\n  " + rep.rejected[i];
    throw CorpusError(msg);
  }
  return rep;
}

LoadReport load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file: " + path);
  return load_corpus(in);
}

void save_corpus(std::ostream& out, const std::vector<CorpusRecord>& recs) {
  for (const auto& r : recs) {
    json toks = json::array();
    for (const auto& t : r.tokens) {
      json jt = json::array({t.surface, t.pos});
      if (t.entity)
        jt.push_back(*t.entity);
      else
        jt.push_back(nullptr);
      toks.push_back(std::move(jt));
    }
    json j{{"id", r.id},
           {"tokens", std::move(toks)},
           {"blank_index", r.blank_index},
           {"answer", r.answer},
           {"entity_count", r.entity_count}};
    if (!r.supertags.empty()) j["supertags"] = r.supertags;
    out << j.dump() << "\n";
  }
}

std::string format_stats(const CorpusStats& s) {
  std::ostringstream out;
  out << "Sentences\t" << s.sentences << "\n"
      << "Tokens\t" << s.tokens << "\n"
      << "Types\t" << s.word_types << "\n"
      << "Entities\t" << s.entities << "\n";
  return out.str();
}

}  // namespace ccgsem
