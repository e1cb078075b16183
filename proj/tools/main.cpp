// Command-line driver: corpus generation, parsing, grounding, training,
// prediction, evaluation and lexicon sweeps over the bundled pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ccgsem/bow.hpp"
#include "ccgsem/errors.hpp"
#include "ccgsem/eval.hpp"
#include "ccgsem/pipeline.hpp"
#include "ccgsem/semantics.hpp"
#include "ccgsem/synth.hpp"

namespace {

// distinct exit codes per error family
constexpr int kExitConfig = 2;
constexpr int kExitCorpus = 3;
constexpr int kExitKb = 4;
constexpr int kExitLexicon = 5;
constexpr int kExitTrain = 6;
constexpr int kExitPipeline = 7;

using namespace ccgsem;

struct CommonArgs {
  std::string config_path;
  std::string mode;
  std::string kb, corpus, model, out, train_path, word_lex, pos_lex;
  int beam = -1, top_n = -1, epochs = -1;
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "flat key=value config file");
  cmd->add_option("--mode", a.mode,
                  "unsupervised|semi-pos|semi-word|supervised|bow");
  cmd->add_option("--kb", a.kb, "knowledge base file");
  cmd->add_option("--corpus", a.corpus, "corpus file (test split)");
  cmd->add_option("--train", a.train_path, "training corpus file");
  cmd->add_option("--model", a.model, "model file");
  cmd->add_option("--out", a.out, "output file");
  cmd->add_option("--word-lexicon", a.word_lex, "ranked word lexicon file");
  cmd->add_option("--pos-lexicon", a.pos_lex, "POS lexicon file");
  cmd->add_option("--beam", a.beam, "parser beam width");
  cmd->add_option("--top-n", a.top_n, "derivations kept per sentence");
  cmd->add_option("--epochs", a.epochs, "training epochs");
  cmd->add_option("--seed", a.seed, "random seed");
}

RunConfig resolve(const CommonArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) cfg = load_config_file(a.config_path);
  if (!a.mode.empty()) cfg.mode = parse_supervision_mode(a.mode);
  if (!a.kb.empty()) cfg.kb_path = a.kb;
  if (!a.corpus.empty()) cfg.test_path = a.corpus;
  if (!a.train_path.empty()) cfg.train_path = a.train_path;
  if (!a.model.empty()) cfg.model_path = a.model;
  if (!a.out.empty()) cfg.out_path = a.out;
  if (!a.word_lex.empty()) cfg.word_lexicon_path = a.word_lex;
  if (!a.pos_lex.empty()) cfg.pos_lexicon_path = a.pos_lex;
  if (a.beam > 0) cfg.beam = a.beam;
  if (a.top_n > 0) cfg.top_n = a.top_n;
  if (a.epochs >= 0) cfg.epochs = a.epochs;
  if (a.seed >= 0) cfg.seed = static_cast<std::uint64_t>(a.seed);
  cfg.validate();
  return cfg;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw ConfigError("cannot open output file: " + path);
  return file;
}

PerceptronModel train_ranker(const RunConfig& cfg, const Lexicon& lex,
                             const KnowledgeBase& kb) {
  auto train_recs = load_corpus_file(cfg.train_path).records;
  auto sets = assemble_corpus(train_recs, lex, kb, cfg);
  PerceptronConfig pcfg;
  pcfg.epochs = cfg.epochs;
  pcfg.seed = cfg.seed;
  TrainStats stats;
  PerceptronModel model = train(sets, pcfg, &stats);
  std::cerr << "trained on " << sets.size() << " sentences ("
            << stats.skipped_no_positive << " without positives, "
            << stats.updates << " updates)\n";
  return model;
}

int cmd_generate(const CommonArgs& a, long long seed, int train_n,
                 int test_n) {
  SynthConfig scfg;
  if (seed >= 0) scfg.seed = static_cast<std::uint64_t>(seed);
  if (train_n > 0) scfg.train_sentences = train_n;
  if (test_n > 0) scfg.test_sentences = test_n;
  std::string dir = a.out.empty() ? "data" : a.out;
  write_synth(generate_synth(scfg), dir);
  std::cout << "wrote " << dir << "/{kb.txt,train.jsonl,test.jsonl,"
            << "word_lexicon.txt,pos_lexicon.txt,manifest.json}\n";
  return 0;
}

int cmd_stats(const CommonArgs& a) {
  auto rep = load_corpus_file(resolve(a).test_path);
  std::cout << format_stats(rep.stats);
  if (!rep.rejected.empty()) {
    std::cout << "rejected " << rep.rejected.size() << " records:\n";
    for (const auto& r : rep.rejected) std::cout << "  " << r << "\n";
  }
  return 0;
}

int cmd_parse(const CommonArgs& a, bool emit_ungrounded) {
  RunConfig cfg = resolve(a);
  Lexicon lex = build_lexicon(cfg);
  auto recs = load_corpus_file(cfg.test_path).records;
  std::ofstream file;
  std::ostream& out = open_out(cfg.out_path, file);
  for (const auto& rec : recs) {
    out << "# " << rec.id << "\n";
    try {
      auto cands = candidate_categories(rec, lex, cfg);
      ParseConfig pcfg;
      pcfg.beam_width = cfg.beam;
      pcfg.top_n = cfg.top_n;
      auto derivs = parse(rec.tokens, cands, pcfg);
      std::set<std::string> graphs;
      for (const auto& d : derivs) {
        out << d.str() << "\n";
        if (emit_ungrounded) {
          try {
            for (const auto& g : compose(d, rec.tokens)) graphs.insert(g.str());
          } catch (const ComposeError&) {
          }
        }
      }
      for (const auto& g : graphs) out << "--\n" << g;
    } catch (const CoverageError& e) {
      out << "! coverage: " << e.what() << "\n";
    }
  }
  return 0;
}

int cmd_ground(const CommonArgs& a, bool emit_candidates) {
  RunConfig cfg = resolve(a);
  Lexicon lex = build_lexicon(cfg);
  KnowledgeBase kb = load_kb_file(cfg.kb_path);
  auto recs = load_corpus_file(cfg.test_path).records;
  std::ofstream file;
  std::ostream& out = open_out(cfg.out_path, file);
  for (const auto& rec : recs) {
    CandidateSet cs = assemble_candidates(rec, lex, kb, cfg);
    out << "# " << rec.id << "\t" << cs.candidates.size() << " candidates"
        << (cs.truncated ? " (truncated)" : "") << "\n";
    if (emit_candidates)
      for (const auto& c : cs.candidates) out << c.str() << "--\n";
  }
  return 0;
}

int cmd_train(const CommonArgs& a) {
  RunConfig cfg = resolve(a);
  if (cfg.train_path.empty()) throw ConfigError("train: need --train");
  if (cfg.model_path.empty()) throw ConfigError("train: need --model");
  KnowledgeBase kb = load_kb_file(cfg.kb_path);
  std::ofstream mf(cfg.model_path);
  if (!mf) throw ConfigError("cannot open model file: " + cfg.model_path);
  if (cfg.mode == SupervisionMode::Bow) {
    auto recs = load_corpus_file(cfg.train_path).records;
    BowConfig bcfg;
    bcfg.epochs = cfg.epochs;
    bcfg.seed = cfg.seed;
    train_bow(recs, kb, bcfg).save(mf);
  } else {
    Lexicon lex = build_lexicon(cfg);
    train_ranker(cfg, lex, kb).save(mf);
  }
  return 0;
}

int cmd_predict(const CommonArgs& a) {
  RunConfig cfg = resolve(a);
  if (cfg.model_path.empty()) throw ConfigError("predict: need --model");
  KnowledgeBase kb = load_kb_file(cfg.kb_path);
  auto recs = load_corpus_file(cfg.test_path).records;
  std::ifstream mf(cfg.model_path);
  if (!mf) throw ConfigError("cannot open model file: " + cfg.model_path);
  std::ofstream file;
  std::ostream& out = open_out(cfg.out_path, file);
  if (cfg.mode == SupervisionMode::Bow) {
    BowModel model = BowModel::load(mf);
    for (const auto& rec : recs) {
      auto p = predict_bow(rec, kb, model);
      out << rec.id << "\t" << (p ? *p : "-") << "\n";
    }
  } else {
    Lexicon lex = build_lexicon(cfg);
    PerceptronModel model = PerceptronModel::load(mf);
    for (const auto& rec : recs) {
      auto p = predict(rec, lex, kb, model, cfg);
      out << rec.id << "\t" << (p ? p->answer : "-") << "\n";
    }
  }
  return 0;
}

int cmd_evaluate(const CommonArgs& a) {
  RunConfig cfg = resolve(a);
  KnowledgeBase kb = load_kb_file(cfg.kb_path);
  auto test = load_corpus_file(cfg.test_path).records;
  EvalReport rep;
  if (cfg.mode == SupervisionMode::Bow) {
    auto train_recs = load_corpus_file(cfg.train_path).records;
    BowConfig bcfg;
    bcfg.epochs = cfg.epochs;
    bcfg.seed = cfg.seed;
    BowModel model = train_bow(train_recs, kb, bcfg);
    rep = evaluate(test, [&](const CorpusRecord& rec) {
      return predict_bow(rec, kb, model);
    });
  } else {
    Lexicon lex = build_lexicon(cfg);
    PerceptronModel model;
    std::ifstream mf(cfg.model_path);
    if (!cfg.model_path.empty() && mf)
      model = PerceptronModel::load(mf);
    else
      model = train_ranker(cfg, lex, kb);
    rep = evaluate(test, [&](const CorpusRecord& rec) {
      auto p = predict(rec, lex, kb, model, cfg);
      return p ? std::optional<std::string>(p->answer) : std::nullopt;
    });
  }
  std::ofstream file;
  std::ostream& out = open_out(cfg.out_path, file);
  out << rep.table();
  return 0;
}

int cmd_sweep(const CommonArgs& a, const std::vector<int>& sizes) {
  RunConfig cfg = resolve(a);
  if (cfg.word_lexicon_path.empty())
    throw ConfigError("sweep: need --word-lexicon");
  KnowledgeBase kb = load_kb_file(cfg.kb_path);
  auto train_recs = load_corpus_file(cfg.train_path).records;
  auto test = load_corpus_file(cfg.test_path).records;
  std::ifstream lf(cfg.word_lexicon_path);
  if (!lf)
    throw LexiconError("cannot open lexicon: " + cfg.word_lexicon_path);
  RankedEntries ranked = load_ranked_lexicon_file(lf);
  SweepResult res = sweep_lexicon(train_recs, test, ranked, sizes, kb, cfg);
  std::ofstream file;
  std::ostream& out = open_out(cfg.out_path, file);
  out << res.tsv();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grounded semantic parsing pipeline"};
  app.require_subcommand(1);

  CommonArgs a;
  bool emit_ungrounded = false, emit_candidates = false;
  long long gen_seed = -1;
  int gen_train = -1, gen_test = -1;
  std::vector<int> sizes;

  auto* generate = app.add_subcommand("generate", "write the bundled dataset");
  generate->add_option("--seed", gen_seed, "generator seed");
  generate->add_option("--out", a.out, "output directory");
  generate->add_option("--train-sentences", gen_train, "train split size");
  generate->add_option("--test-sentences", gen_test, "test split size");

  auto* stats = app.add_subcommand("stats", "corpus statistics");
  add_common(stats, a);

  auto* parse_cmd = app.add_subcommand("parse", "derivations per sentence");
  add_common(parse_cmd, a);
  parse_cmd->add_flag("--emit-ungrounded", emit_ungrounded,
                      "also print composed graphs");

  auto* ground_cmd = app.add_subcommand("ground", "grounded candidate counts");
  add_common(ground_cmd, a);
  ground_cmd->add_flag("--emit-candidates", emit_candidates,
                       "print every candidate");

  auto* train_cmd = app.add_subcommand("train", "train a model");
  add_common(train_cmd, a);

  auto* predict_cmd = app.add_subcommand("predict", "answer each blank");
  add_common(predict_cmd, a);

  auto* eval_cmd = app.add_subcommand("evaluate", "accuracy report");
  add_common(eval_cmd, a);

  auto* sweep_cmd = app.add_subcommand("sweep", "lexicon-size sweep");
  add_common(sweep_cmd, a);
  sweep_cmd->add_option("--sizes", sizes, "lexicon sizes, ascending")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(a, gen_seed, gen_train, gen_test);
    if (stats->parsed()) return cmd_stats(a);
    if (parse_cmd->parsed()) return cmd_parse(a, emit_ungrounded);
    if (ground_cmd->parsed()) return cmd_ground(a, emit_candidates);
    if (train_cmd->parsed()) return cmd_train(a);
    if (predict_cmd->parsed()) return cmd_predict(a);
    if (eval_cmd->parsed()) return cmd_evaluate(a);
    if (sweep_cmd->parsed()) return cmd_sweep(a, sizes);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return kExitCorpus;
  } catch (const KbError& e) {
    std::cerr << "kb error";
    if (e.line) std::cerr << " (line " << e.line << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitKb;
  } catch (const LexiconError& e) {
    std::cerr << "lexicon error: " << e.what() << "\n";
    return kExitLexicon;
  } catch (const CategoryParseError& e) {
    std::cerr << "category error: " << e.what() << "\n";
    return kExitLexicon;
  } catch (const TrainError& e) {
    std::cerr << "training error: " << e.what() << "\n";
    return kExitTrain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return 0;
}
