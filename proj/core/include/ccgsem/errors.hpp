#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccgsem {

// Malformed category string; offset is the 0-based character position.
struct CategoryParseError : std::runtime_error {
  std::size_t offset;
  CategoryParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg), offset(off) {}
};

struct LexiconError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A token obtained no candidate categories under the active supervision mode.
struct CoverageError : std::runtime_error {
  std::string token;
  CoverageError(const std::string& msg, std::string tok)
      : std::runtime_error(msg), token(std::move(tok)) {}
};

struct ComposeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KbError : std::runtime_error {
  int line;  // 1-based line in the KB file, or 0 when not file-related
  KbError(const std::string& msg, int ln = 0)
      : std::runtime_error(msg), line(ln) {}
};

struct QueryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ccgsem
