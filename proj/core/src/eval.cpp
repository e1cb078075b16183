#include "ccgsem/eval.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ccgsem/errors.hpp"
#include "ccgsem/pipeline.hpp"

namespace ccgsem {

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

std::string EvalReport::table() const {
  std::ostringstream out;
  out << "overall      " << pct(overall) << "  (" << correct << "/" << total
      << ", " << unanswered << " unanswered)\n";
  const char* names[3] = {"2-entity", "3-entity", "4-entity"};
  for (int b = 0; b < 3; ++b)
    out << names[b] << "     " << pct(bucket_acc[b]) << "  ("
        << bucket_correct[b] << "/" << bucket_total[b] << ")\n";
  if (folded_buckets) out << "(sentences with >4 entities folded into 4)\n";
  return out.str();
}

std::string EvalReport::tsv() const {
  std::ostringstream out;
  out << "overall\t" << pct(overall) << "\t" << correct << "\t" << total
      << "\n";
  for (int b = 0; b < 3; ++b)
    out << (b + 2) << "-entity\t" << pct(bucket_acc[b]) << "\t"
        << bucket_correct[b] << "\t" << bucket_total[b] << "\n";
  out << "unanswered\t" << unanswered << "\n";
  return out.str();
}

EvalReport evaluate(const std::vector<CorpusRecord>& corpus,
                    const PredictFn& system) {
  EvalReport rep;
  for (const auto& rec : corpus) {
    int bucket = std::clamp(rec.entity_count, 2, 4) - 2;
    if (rec.entity_count > 4) rep.folded_buckets = true;
    ++rep.total;
    ++rep.bucket_total[bucket];
    auto pred = system(rec);
    if (!pred) {
      ++rep.unanswered;
      continue;
    }
    if (*pred == rec.answer) {
      ++rep.correct;
      ++rep.bucket_correct[bucket];
    }
  }
  if (rep.total > 0) rep.overall = 100.0 * rep.correct / rep.total;
  for (int b = 0; b < 3; ++b)
    if (rep.bucket_total[b] > 0)
      rep.bucket_acc[b] = 100.0 * rep.bucket_correct[b] / rep.bucket_total[b];
  return rep;
}

namespace {

struct DepState {
  std::map<int, std::string> lexical;  // token -> plain category string
  std::set<LabeledDep> deps;
};

int walk_deps(const std::shared_ptr<const Derivation::Node>& n, DepState& st) {
  if (n->is_leaf()) {
    st.lexical[n->token_index] = n->lexical->category.str();
    return n->token_index;
  }
  int lh = walk_deps(n->left, st);
  int rh = walk_deps(n->right, st);
  bool functor_left =
      n->combinator == "fwd-app" || n->combinator == "fwd-comp" ||
      n->combinator == "conj";
  int fh = functor_left ? lh : rh;
  int ah = functor_left ? rh : lh;
  const Category& fcat = functor_left ? n->left->category : n->right->category;
  st.deps.insert({fh, ah, st.lexical[fh]});
  // modifiers (and the conj expansion) keep the modified head
  bool keep_arg_head = fcat.is_modifier() || n->combinator == "conj";
  return keep_arg_head ? ah : fh;
}

double f1(double overlap, double psize, double rsize) {
  if (psize == 0.0 || rsize == 0.0) return 0.0;
  double p = overlap / psize, r = overlap / rsize;
  if (p + r == 0.0) return 0.0;
  return 100.0 * 2.0 * p * r / (p + r);
}

}  // namespace

std::set<LabeledDep> extract_dependencies(const Derivation& d) {
  DepState st;
  if (d.root) walk_deps(d.root, st);
  return st.deps;
}

SyntaxScore score_syntax(const Derivation& predicted,
                         const Derivation& reference) {
  SyntaxScore sc;
  auto pd = extract_dependencies(predicted);
  auto rd = extract_dependencies(reference);
  if (pd.empty() || rd.empty()) {
    sc.degenerate = true;
    return sc;
  }
  double labeled_overlap = 0.0;
  for (const auto& dep : pd)
    if (rd.count(dep)) labeled_overlap += 1.0;
  sc.lf1 = f1(labeled_overlap, static_cast<double>(pd.size()),
              static_cast<double>(rd.size()));

  auto undirected = [](const std::set<LabeledDep>& deps) {
    std::set<std::pair<int, int>> out;
    for (const auto& [a, b, lab] : deps)
      out.insert({std::min(a, b), std::max(a, b)});
    return out;
  };
  auto pu = undirected(pd);
  auto ru = undirected(rd);
  double u_overlap = 0.0;
  for (const auto& e : pu)
    if (ru.count(e)) u_overlap += 1.0;
  sc.uf1 = f1(u_overlap, static_cast<double>(pu.size()),
              static_cast<double>(ru.size()));
  return sc;
}

std::string SweepResult::tsv() const {
  std::ostringstream out;
  out << "size\tlf1\taccuracy\n";
  for (const auto& r : rows)
    out << r.size << "\t" << pct(r.lf1) << "\t" << pct(r.accuracy) << "\n";
  if (partial) out << "# partial: a retrain failed\n";
  return out.str();
}

namespace {

// Mean labeled F1 of the top constrained derivation against the gold
// supertag derivation, over test records that carry supertags (capped).
double mean_lf1(const std::vector<CorpusRecord>& test, const Lexicon& lex,
                const RunConfig& cfg) {
  double sum = 0.0;
  long n = 0;
  const long cap = 200;
  RunConfig gold_cfg = cfg;
  gold_cfg.mode = SupervisionMode::Supervised;
  Lexicon gold_lex;
  gold_lex.mode = LexiconMode::Gold;
  for (const auto& rec : test) {
    if (n >= cap) break;
    if (rec.supertags.empty()) continue;
    try {
      ParseConfig pcfg;
      pcfg.beam_width = cfg.beam;
      pcfg.top_n = 1;
      auto pred_cands = candidate_categories(rec, lex, cfg);
      auto pred = parse(rec.tokens, pred_cands, pcfg);
      auto ref_cands = candidate_categories(rec, gold_lex, gold_cfg);
      auto ref = parse(rec.tokens, ref_cands, pcfg);
      ++n;
      if (!pred.empty() && !ref.empty())
        sum += score_syntax(pred[0], ref[0]).lf1;
    } catch (const CoverageError&) {
      ++n;  // counts as 0
    }
  }
  return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace

SweepResult sweep_lexicon(const std::vector<CorpusRecord>& train,
                          const std::vector<CorpusRecord>& test,
                          const RankedEntries& ranked,
                          const std::vector<int>& sizes,
                          const KnowledgeBase& kb, const RunConfig& cfg) {
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 0) throw ConfigError("sweep: negative size");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw ConfigError("sweep: sizes must be ascending and unique");
  }

  Lexicon base;
  base.mode = LexiconMode::Induced;

  SweepResult result;
  for (int size : sizes) {
    Lexicon lex = constrain_lexicon(base, ranked, size);
    RunConfig run = cfg;
    run.mode = size == 0 ? SupervisionMode::Unsupervised
                         : SupervisionMode::SemiWord;
    SweepRow row;
    row.size = size;
    try {
      auto sets = assemble_corpus(train, lex, kb, run);
      PerceptronConfig pcfg;
      pcfg.epochs = run.epochs;
      pcfg.seed = run.seed;
      PerceptronModel model = ccgsem::train(sets, pcfg);
      auto rep = evaluate(test, [&](const CorpusRecord& rec) {
        auto p = predict(rec, lex, kb, model, run);
        return p ? std::optional<std::string>(p->answer) : std::nullopt;
      });
      row.accuracy = rep.overall;
      row.lf1 = mean_lf1(test, lex, run);
    } catch (const TrainError&) {
      result.partial = true;
      break;
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace ccgsem
