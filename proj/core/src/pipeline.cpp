#include "ccgsem/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "ccgsem/errors.hpp"
#include "ccgsem/induction.hpp"
#include "ccgsem/semantics.hpp"

namespace ccgsem {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::set<CoindexedCategory> blank_candidates() {
  return coindex_all({parse_category("NP")});
}

}  // namespace

std::vector<std::set<CoindexedCategory>> candidate_categories(
    const CorpusRecord& rec, const Lexicon& lex, const RunConfig& cfg) {
  const auto n = rec.tokens.size();
  std::vector<std::set<CoindexedCategory>> out(n);

  if (lex.mode == LexiconMode::Gold) {
    if (rec.supertags.size() != n)
      throw LexiconError("gold mode needs supertags for record " + rec.id);
    for (std::size_t i = 0; i < n; ++i) {
      if (rec.tokens[i].is_blank) {
        out[i] = blank_candidates();
        continue;
      }
      out[i] = coindex_all({parse_category(rec.supertags[i])});
    }
    return out;
  }

  std::vector<std::string> pos;
  pos.reserve(n);
  for (const auto& t : rec.tokens) pos.push_back(t.pos);
  InductionConfig icfg;
  icfg.rounds = cfg.induction_rounds;
  auto induced = induce_categories(pos, icfg);

  for (std::size_t i = 0; i < n; ++i) {
    if (rec.tokens[i].is_blank) {
      out[i] = blank_candidates();
      continue;
    }
    const std::set<Category>* cats = nullptr;
    if (lex.mode == LexiconMode::WordConstrained) {
      auto it = lex.word_entries.find(lower(rec.tokens[i].surface));
      if (it != lex.word_entries.end()) cats = &it->second;
    } else if (lex.mode == LexiconMode::PosConstrained) {
      auto it = lex.pos_entries.find(rec.tokens[i].pos);
      if (it != lex.pos_entries.end()) cats = &it->second;
    }
    out[i] = coindex_all(cats ? *cats : induced[i]);
  }
  return out;
}

CandidateSet assemble_candidates(const CorpusRecord& rec, const Lexicon& lex,
                                 const KnowledgeBase& kb,
                                 const RunConfig& cfg) {
  CandidateSet cs;
  cs.sentence_id = rec.id;

  std::vector<Derivation> derivations;
  try {
    auto cands = candidate_categories(rec, lex, cfg);
    ParseConfig pcfg;
    pcfg.beam_width = cfg.beam;
    pcfg.top_n = cfg.top_n;
    derivations = parse(rec.tokens, cands, pcfg);
  } catch (const CoverageError&) {
    return cs;
  }

  GroundingConfig gcfg;
  gcfg.max_candidates = cfg.max_candidates;
  std::vector<GroundedGraph> pool;
  for (const auto& d : derivations) {
    std::vector<UngroundedGraph> graphs;
    try {
      graphs = compose(d, rec.tokens);
    } catch (const ComposeError&) {
      continue;
    }
    for (const auto& g : graphs) {
      if (!validate(g).ok) continue;
      auto res = ground(g, kb, gcfg);
      cs.truncated = cs.truncated || res.truncated;
      if (cs.ungrounded.nodes.empty() && !res.candidates.empty())
        cs.ungrounded = g;
      pool.insert(pool.end(), res.candidates.begin(), res.candidates.end());
    }
  }
  std::sort(pool.begin(), pool.end(),
            [](const GroundedGraph& a, const GroundedGraph& b) {
              return a.str() < b.str();
            });
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (static_cast<int>(pool.size()) > cfg.max_candidates) {
    pool.resize(cfg.max_candidates);
    cs.truncated = true;
  }
  cs.candidates = std::move(pool);
  return cs;
}

std::vector<CandidateSet> assemble_corpus(
    const std::vector<CorpusRecord>& corpus, const Lexicon& lex,
    const KnowledgeBase& kb, const RunConfig& cfg) {
  std::vector<CandidateSet> out;
  out.reserve(corpus.size());
  for (const auto& rec : corpus) {
    CandidateSet cs = assemble_candidates(rec, lex, kb, cfg);
    for (int i = 0; i < static_cast<int>(cs.candidates.size()); ++i) {
      auto answers = execute(cs.candidates[i], kb);
      if (!answers.empty() && answers.front() == rec.answer)
        cs.positives.push_back(i);
    }
    out.push_back(std::move(cs));
  }
  return out;
}

std::optional<Prediction> predict(const CorpusRecord& rec, const Lexicon& lex,
                                  const KnowledgeBase& kb,
                                  const PerceptronModel& model,
                                  const RunConfig& cfg) {
  CandidateSet cs = assemble_candidates(rec, lex, kb, cfg);
  if (cs.candidates.empty()) return std::nullopt;
  int best = 0;
  double best_score = model.score(featurize(cs.candidates[0]));
  for (int i = 1; i < static_cast<int>(cs.candidates.size()); ++i) {
    double s = model.score(featurize(cs.candidates[i]));
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  auto answers = execute(cs.candidates[best], kb);
  if (answers.empty()) return std::nullopt;
  return Prediction{answers.front(), cs.candidates[best]};
}

Lexicon build_lexicon(const RunConfig& cfg) {
  Lexicon lex;
  switch (cfg.mode) {
    case SupervisionMode::Supervised:
      lex.mode = LexiconMode::Gold;
      break;
    case SupervisionMode::SemiWord: {
      lex.mode = LexiconMode::WordConstrained;
      if (cfg.word_lexicon_path.empty())
        throw ConfigError("semi-word mode needs word_lexicon");
      std::ifstream in(cfg.word_lexicon_path);
      if (!in)
        throw LexiconError("cannot open lexicon: " + cfg.word_lexicon_path);
      lex.word_entries = load_lexicon_file(in);
      break;
    }
    case SupervisionMode::SemiPos: {
      lex.mode = LexiconMode::PosConstrained;
      if (cfg.pos_lexicon_path.empty())
        throw ConfigError("semi-pos mode needs pos_lexicon");
      std::ifstream in(cfg.pos_lexicon_path);
      if (!in)
        throw LexiconError("cannot open lexicon: " + cfg.pos_lexicon_path);
      lex.pos_entries = load_lexicon_file(in);
      break;
    }
    case SupervisionMode::Unsupervised:
    case SupervisionMode::Bow:
      lex.mode = LexiconMode::Induced;
      break;
  }
  return lex;
}

}  // namespace ccgsem
