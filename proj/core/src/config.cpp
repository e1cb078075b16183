#include "ccgsem/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ccgsem/errors.hpp"

namespace ccgsem {

const char* supervision_mode_name(SupervisionMode m) {
  switch (m) {
    case SupervisionMode::Unsupervised: return "unsupervised";
    case SupervisionMode::SemiPos: return "semi-pos";
    case SupervisionMode::SemiWord: return "semi-word";
    case SupervisionMode::Supervised: return "supervised";
    case SupervisionMode::Bow: return "bow";
  }
  return "?";
}

SupervisionMode parse_supervision_mode(const std::string& s) {
  static const std::map<std::string, SupervisionMode> table{
      {"unsupervised", SupervisionMode::Unsupervised},
      {"semi-pos", SupervisionMode::SemiPos},
      {"semi-word", SupervisionMode::SemiWord},
      {"supervised", SupervisionMode::Supervised},
      {"bow", SupervisionMode::Bow}};
  auto it = table.find(s);
  if (it == table.end()) throw ConfigError("unknown mode '" + s + "'");
  return it->second;
}

void RunConfig::validate() const {
  if (beam <= 0) throw ConfigError("beam must be positive");
  if (top_n <= 0) throw ConfigError("top_n must be positive");
  if (epochs < 0) throw ConfigError("epochs must be non-negative");
  if (max_candidates <= 0) throw ConfigError("max_candidates must be positive");
  if (induction_rounds <= 0)
    throw ConfigError("induction_rounds must be positive");
}

RunConfig load_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    std::string t = strip(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key=value");
    std::string key = strip(t.substr(0, eq));
    std::string val = strip(t.substr(eq + 1));
    try {
      if (key == "mode") cfg.mode = parse_supervision_mode(val);
      else if (key == "beam") cfg.beam = std::stoi(val);
      else if (key == "top_n") cfg.top_n = std::stoi(val);
      else if (key == "epochs") cfg.epochs = std::stoi(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "max_candidates") cfg.max_candidates = std::stoi(val);
      else if (key == "induction_rounds") cfg.induction_rounds = std::stoi(val);
      else if (key == "kb") cfg.kb_path = val;
      else if (key == "train") cfg.train_path = val;
      else if (key == "test") cfg.test_path = val;
      else if (key == "model") cfg.model_path = val;
      else if (key == "out") cfg.out_path = val;
      else if (key == "word_lexicon") cfg.word_lexicon_path = val;
      else if (key == "pos_lexicon") cfg.pos_lexicon_path = val;
      else
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": bad numeric value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": value out of range for '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return load_config(in);
}

}  // namespace ccgsem
