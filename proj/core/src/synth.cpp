#include "ccgsem/synth.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "ccgsem/errors.hpp"

namespace ccgsem {

namespace {

struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int pick(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

std::string make_name(Rng& rng, std::set<std::string>& used) {
  static const char* onsets[] = {"b",  "br", "d",  "dr", "f",  "g",  "gr",
                                 "h",  "k",  "l",  "m",  "n",  "p",  "pr",
                                 "r",  "s",  "st", "t",  "tr", "v",  "z"};
  static const char* vowels[] = {"a", "e", "i", "o", "u", "ai", "or", "el"};
  static const char* codas[] = {"n", "x", "s", "l", "r", "m", "d", "k", "th"};
  for (;;) {
    std::string s;
    int syllables = 2 + rng.pick(2);
    for (int i = 0; i < syllables; ++i) {
      s += onsets[rng.pick(std::size(onsets))];
      s += vowels[rng.pick(std::size(vowels))];
    }
    s += codas[rng.pick(std::size(codas))];
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (used.insert(s).second) return s;
  }
}

// gold supertags
const char* kNP = "NP";
const char* kTV = "(S\\NP)/NP";          // transitive verb
const char* kVpIn = "((S\\NP)\\(S\\NP))/NP";  // VP-final preposition
const char* kSIn = "(S/S)/NP";           // sentence-initial preposition
const char* kPPIn = "PP/NP";             // argument preposition
const char* kAux = "(S\\NP)/(S\\NP)";
const char* kVPP = "(S\\NP)/PP";         // verb taking a PP
const char* kRel = "(NP\\NP)/(S\\NP)";
const char* kDet = "NP/N";
const char* kN = "N";
const char* kConj = "conj";

struct TokSpec {
  std::string surface;
  std::string pos;
  std::string entity;  // empty = none
  std::string tag;
};

TokSpec ent(const std::string& name, const char* pos = "NNP") {
  return {name, pos, name, kNP};
}
TokSpec word(const std::string& s, const char* pos, const char* tag) {
  return {s, pos, "", tag};
}

struct Sentence {
  std::vector<TokSpec> toks;
  std::vector<int> blankable;  // token indexes with a unique answer
};

struct World {
  std::vector<std::string> companies, people, cities, countries, years;
  std::map<std::string, std::string> city_country;
  std::map<std::string, std::string> founding_loc, founding_date;
  std::map<std::string, std::string> hq_city;
  std::map<std::string, int> hq_city_count;  // city -> #companies
  std::map<std::string, std::string> employer;           // person -> company
  std::map<std::string, std::string> birth_place, birth_date;
  struct Acq {
    std::string a, b, date;
  };
  std::vector<Acq> acqs;
};

Sentence make_sentence(const World& w, Rng& rng) {
  Sentence s;
  auto add = [&s](TokSpec t, bool blankable_here = false) {
    if (blankable_here) s.blankable.push_back(static_cast<int>(s.toks.size()));
    s.toks.push_back(std::move(t));
  };
  int roll = rng.pick(100);
  if (roll < 14) {  // A acquired B
    const auto& q = w.acqs[rng.pick(static_cast<int>(w.acqs.size()))];
    add(ent(q.a), true);
    add(word("acquired", "VBD", kTV));
    add(ent(q.b), true);
  } else if (roll < 28) {  // A acquired B in D
    const auto& q = w.acqs[rng.pick(static_cast<int>(w.acqs.size()))];
    add(ent(q.a), true);
    add(word("acquired", "VBD", kTV));
    add(ent(q.b), true);
    add(word("in", "IN", kVpIn));
    add(ent(q.date, "CD"), true);
  } else if (roll < 40) {  // A acquired B which was founded in L
    const auto& q = w.acqs[rng.pick(static_cast<int>(w.acqs.size()))];
    add(ent(q.a), true);
    add(word("acquired", "VBD", kTV));
    add(ent(q.b), true);
    add(word("which", "WDT", kRel));
    add(word("was", "VBD", kAux));
    add(word("founded", "VBN", kVPP));
    add(word("in", "IN", kPPIn));
    add(ent(w.founding_loc.at(q.b)), true);
  } else if (roll < 50) {  // In D A acquired B
    const auto& q = w.acqs[rng.pick(static_cast<int>(w.acqs.size()))];
    add(word("In", "IN", kSIn));
    add(ent(q.date, "CD"), true);
    add(ent(q.a), true);
    add(word("acquired", "VBD", kTV));
    add(ent(q.b), true);
  } else if (roll < 58) {  // A acquired B , a company
    const auto& q = w.acqs[rng.pick(static_cast<int>(w.acqs.size()))];
    add(ent(q.a), true);
    add(word("acquired", "VBD", kTV));
    add(ent(q.b), true);
    add(word(",", ",", kConj));
    add(word("a", "DT", kDet));
    add(word("company", "NN", kN));
  } else if (roll < 68) {  // A is headquartered in C
    const auto& a = w.companies[rng.pick(static_cast<int>(w.companies.size()))];
    const auto& c = w.hq_city.at(a);
    add(ent(a), w.hq_city_count.at(c) == 1);
    add(word("is", "VBZ", kAux));
    add(word("headquartered", "VBN", kVPP));
    add(word("in", "IN", kPPIn));
    add(ent(c), true);
  } else if (roll < 76) {  // In D A acquired B which was founded in L
    const auto& q = w.acqs[rng.pick(static_cast<int>(w.acqs.size()))];
    add(word("In", "IN", kSIn));
    add(ent(q.date, "CD"), true);
    add(ent(q.a), true);
    add(word("acquired", "VBD", kTV));
    add(ent(q.b), true);
    add(word("which", "WDT", kRel));
    add(word("was", "VBD", kAux));
    add(word("founded", "VBN", kVPP));
    add(word("in", "IN", kPPIn));
    add(ent(w.founding_loc.at(q.b)), true);
  } else if (roll < 86) {  // P works for A
    const auto& p = w.people[rng.pick(static_cast<int>(w.people.size()))];
    add(ent(p), true);
    add(word("works", "VBZ", kVPP));
    add(word("for", "IN", kPPIn));
    add(ent(w.employer.at(p)), true);
  } else if (roll < 94) {  // P was born in L in D
    const auto& p = w.people[rng.pick(static_cast<int>(w.people.size()))];
    add(ent(p));
    add(word("was", "VBD", kAux));
    add(word("born", "VBN", kVPP));
    add(word("in", "IN", kPPIn));
    add(ent(w.birth_place.at(p)), true);
    add(word("in", "IN", kVpIn));
    add(ent(w.birth_date.at(p), "CD"), true);
  } else {  // In D A acquired B which is headquartered in C
    const auto& q = w.acqs[rng.pick(static_cast<int>(w.acqs.size()))];
    add(word("In", "IN", kSIn));
    add(ent(q.date, "CD"), true);
    add(ent(q.a), true);
    add(word("acquired", "VBD", kTV));
    add(ent(q.b), true);
    add(word("which", "WDT", kRel));
    add(word("is", "VBZ", kAux));
    add(word("headquartered", "VBN", kVPP));
    add(word("in", "IN", kPPIn));
    add(ent(w.hq_city.at(q.b)), true);
  }
  return s;
}

CorpusRecord to_record(const Sentence& s, const std::string& id, Rng& rng) {
  CorpusRecord r;
  r.id = id;
  int blank_tok = s.blankable[rng.pick(static_cast<int>(s.blankable.size()))];
  int entities = 0;
  for (int i = 0; i < static_cast<int>(s.toks.size()); ++i) {
    const auto& t = s.toks[i];
    if (!t.entity.empty()) ++entities;
    Token tok;
    if (i == blank_tok) {
      tok.surface = "__blank__";
      tok.pos = t.pos;
      tok.is_blank = true;
      r.blank_index = i;
      r.answer = t.entity;
      r.supertags.push_back(kNP);
    } else {
      tok.surface = t.surface;
      tok.pos = t.pos;
      if (!t.entity.empty()) tok.entity = t.entity;
      r.supertags.push_back(t.tag);
    }
    r.tokens.push_back(std::move(tok));
  }
  r.entity_count = entities;
  return r;
}

CorpusStats stats_of(const std::vector<CorpusRecord>& recs) {
  CorpusStats st;
  std::set<std::string> types, entities;
  st.sentences = static_cast<long>(recs.size());
  for (const auto& r : recs) {
    st.tokens += static_cast<long>(r.tokens.size());
    for (const auto& t : r.tokens) {
      types.insert(t.surface);
      if (t.entity) entities.insert(*t.entity);
    }
    entities.insert(r.answer);
  }
  st.word_types = static_cast<long>(types.size());
  st.entities = static_cast<long>(entities.size());
  return st;
}

std::string lower(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

SynthOutput generate_synth(const SynthConfig& cfg) {
  Rng rng{cfg.seed};
  World w;
  std::set<std::string> used;
  for (int i = 0; i < cfg.companies; ++i)
    w.companies.push_back(make_name(rng, used));
  for (int i = 0; i < cfg.people; ++i) w.people.push_back(make_name(rng, used));
  for (int i = 0; i < cfg.cities; ++i) w.cities.push_back(make_name(rng, used));
  for (int i = 0; i < cfg.countries; ++i)
    w.countries.push_back(make_name(rng, used));
  for (int i = 0; i < cfg.years; ++i)
    w.years.push_back(std::to_string(cfg.year_base + i));
  for (int i = 0; i < cfg.cities; ++i)
    w.city_country[w.cities[i]] = w.countries[i % cfg.countries];

  SynthOutput out;
  KnowledgeBase& kb = out.kb;
  kb.schema["business.acquisition"] = {"acquiring_company", "company_acquired",
                                       "date"};
  kb.schema["organization.founding"] = {"company", "founder", "date",
                                        "location"};
  kb.schema["people.employment"] = {"employee", "employer"};
  kb.schema["organization.headquarters"] = {"company", "city", "country"};
  kb.schema["people.birth"] = {"person", "place", "date"};

  for (const auto& c : w.companies) kb.entity_types[c].insert("company");
  for (const auto& p : w.people) kb.entity_types[p].insert("person");
  for (const auto& c : w.cities) kb.entity_types[c].insert("city");
  for (const auto& c : w.countries) kb.entity_types[c].insert("country");
  for (const auto& y : w.years) kb.entity_types[y].insert("date");

  int ev_id = 0;
  auto push = [&kb, &ev_id](const std::string& type,
                            std::map<std::string, std::string> fillers) {
    EventInstance ev;
    ev.id = "ev" + std::to_string(ev_id++);
    ev.type = type;
    ev.fillers = std::move(fillers);
    kb.events.push_back(std::move(ev));
  };

  for (int i = 0; i < cfg.companies; ++i) {
    const auto& c = w.companies[i];
    std::string founder = w.people[rng.pick(cfg.people)];
    std::string fdate = w.years[rng.pick(cfg.years)];
    std::string floc = w.cities[rng.pick(cfg.cities)];
    w.founding_loc[c] = floc;
    w.founding_date[c] = fdate;
    push("organization.founding",
         {{"company", c}, {"founder", founder}, {"date", fdate},
          {"location", floc}});
    std::string city = w.cities[rng.pick(cfg.cities)];
    w.hq_city[c] = city;
    ++w.hq_city_count[city];
    push("organization.headquarters",
         {{"company", c}, {"city", city}, {"country", w.city_country[city]}});
  }
  for (int i = 0; i < cfg.people; ++i) {
    const auto& p = w.people[i];
    w.employer[p] = w.companies[i % cfg.companies];
    push("people.employment", {{"employee", p}, {"employer", w.employer[p]}});
    w.birth_place[p] = w.cities[rng.pick(cfg.cities)];
    w.birth_date[p] = w.years[rng.pick(cfg.years)];
    push("people.birth", {{"person", p}, {"place", w.birth_place[p]},
                          {"date", w.birth_date[p]}});
  }
  // unique acquirer and acquiree per acquisition, so either side of an
  // acquisition sentence identifies the event
  for (int k = 0; 2 * k + 1 < cfg.companies; ++k) {
    World::Acq q{w.companies[2 * k], w.companies[2 * k + 1],
                 w.years[rng.pick(cfg.years)]};
    push("business.acquisition", {{"acquiring_company", q.a},
                                  {"company_acquired", q.b},
                                  {"date", q.date}});
    w.acqs.push_back(std::move(q));
  }
  kb.build_indexes();

  for (int i = 0; i < cfg.train_sentences; ++i)
    out.train.push_back(
        to_record(make_sentence(w, rng), "train-" + std::to_string(i), rng));
  for (int i = 0; i < cfg.test_sentences; ++i)
    out.test.push_back(
        to_record(make_sentence(w, rng), "test-" + std::to_string(i), rng));

  // gold lexicons observed in train
  std::map<std::string, long> freq;
  std::map<std::string, std::set<Category>> word_cats;
  for (const auto& r : out.train)
    for (std::size_t i = 0; i < r.tokens.size(); ++i) {
      if (r.tokens[i].is_blank) continue;
      std::string key = lower(r.tokens[i].surface);
      ++freq[key];
      word_cats[key].insert(parse_category(r.supertags[i]));
      out.pos_lexicon[r.tokens[i].pos].insert(parse_category(r.supertags[i]));
    }
  std::vector<std::string> keys;
  for (const auto& [k, f] : freq) keys.push_back(k);
  std::sort(keys.begin(), keys.end(),
            [&freq](const std::string& a, const std::string& b) {
              if (freq[a] != freq[b]) return freq[a] > freq[b];
              return a < b;
            });
  for (const auto& k : keys) out.word_ranked.emplace_back(k, word_cats[k]);

  nlohmann::json manifest{
      {"seed", cfg.seed},
      {"train",
       {{"sentences", stats_of(out.train).sentences},
        {"tokens", stats_of(out.train).tokens},
        {"types", stats_of(out.train).word_types},
        {"entities", stats_of(out.train).entities}}},
      {"test",
       {{"sentences", stats_of(out.test).sentences},
        {"tokens", stats_of(out.test).tokens},
        {"types", stats_of(out.test).word_types},
        {"entities", stats_of(out.test).entities}}},
      {"kb_events", static_cast<long>(kb.events.size())},
      {"lexicon_entries", static_cast<long>(out.word_ranked.size())}};
  out.manifest_json = manifest.dump(2) + "\n";
  return out;
}

void write_synth(const SynthOutput& out, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream f(fs::path(dir) / "kb.txt");
    save_kb(f, out.kb);
  }
  {
    std::ofstream f(fs::path(dir) / "train.jsonl");
    save_corpus(f, out.train);
  }
  {
    std::ofstream f(fs::path(dir) / "test.jsonl");
    save_corpus(f, out.test);
  }
  {
    std::ofstream f(fs::path(dir) / "word_lexicon.txt");
    for (const auto& [key, cats] : out.word_ranked) {
      f << key << '\t';
      bool first = true;
      for (const auto& c : cats) {
        std::string s = c.str();
        f << (first ? "" : ",") << (s == "," ? "comma" : s);
        first = false;
      }
      f << '\n';
    }
  }
  {
    std::ofstream f(fs::path(dir) / "pos_lexicon.txt");
    save_lexicon_file(f, out.pos_lexicon);
  }
  {
    std::ofstream f(fs::path(dir) / "manifest.json");
    f << out.manifest_json;
  }
}

}  // namespace ccgsem
