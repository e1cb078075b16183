#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ccgsem {

enum class SupervisionMode { Unsupervised, SemiPos, SemiWord, Supervised, Bow };

const char* supervision_mode_name(SupervisionMode m);
SupervisionMode parse_supervision_mode(const std::string& s);  // throws

// Flat key=value run configuration; '#' starts a comment.
struct RunConfig {
  SupervisionMode mode = SupervisionMode::Supervised;
  int beam = 50;
  int top_n = 10;
  int epochs = 5;
  std::uint64_t seed = 1;
  int max_candidates = 500;
  int induction_rounds = 2;

  std::string kb_path;
  std::string train_path;
  std::string test_path;
  std::string model_path;
  std::string out_path;
  std::string word_lexicon_path;  // ranked; semi-word mode + sweeps
  std::string pos_lexicon_path;   // semi-pos mode

  void validate() const;  // throws ConfigError
};

RunConfig load_config(std::istream& in);
RunConfig load_config_file(const std::string& path);

}  // namespace ccgsem
