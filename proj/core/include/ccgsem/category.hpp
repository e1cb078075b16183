#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ccgsem {

enum class Atom { S, NP, N, PP, Conj, Comma };
enum class Slash { Forward, Backward };

const char* atom_name(Atom a);

// Immutable CCG syntactic category: an atom or result|argument.
class Category {
 public:
  Category() = default;  // empty; only for containers, not a valid category

  static Category atom(Atom a);
  static Category complex(const Category& result, Slash s,
                          const Category& argument);

  bool valid() const { return node_ != nullptr; }
  bool atomic() const;
  Atom atom_value() const;  // atomic only
  const Category& result() const;
  const Category& argument() const;
  Slash slash() const;

  // 0 for atoms, 1 + max(depth(result), depth(argument)) otherwise.
  int depth() const;
  // Number of arguments along the result spine.
  int arity() const;
  // Innermost result atom of the spine.
  Atom spine_result() const;
  // Modifier shape X|X.
  bool is_modifier() const;

  std::string str() const;

  bool operator==(const Category& o) const;
  bool operator!=(const Category& o) const { return !(*this == o); }
  bool operator<(const Category& o) const;

 private:
  struct Node;
  explicit Category(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Parses the spec notation: atoms {S,NP,N,PP,conj,,}, slashes {/,\},
// balanced parentheses, left association for unparenthesized runs.
// "comma" is accepted as an alias for the "," atom (used in lexicon files
// where "," separates category lists). Throws CategoryParseError.
Category parse_category(std::string_view s);

// Category with a head variable on every atomic position. Positions are
// numbered left to right in the rendered string; variable ids are
// contiguous starting at 0.
struct CoindexedCategory {
  Category category;
  std::vector<int> heads;  // one entry per atomic position
  int root_head = 0;

  std::string str() const;  // e.g. (S_0\N_1)/(S_0\N_1)

  bool operator==(const CoindexedCategory& o) const {
    return category == o.category && heads == o.heads &&
           root_head == o.root_head;
  }
  bool operator<(const CoindexedCategory& o) const;
};

// All co-indexations of c, default first. The default identifies the two
// sides of any modifier X|X and heads the whole with the result's head.
// For the ambiguous auxiliary/control shape (S|A)|(S|A), A in {N, NP},
// a second distinct-head variant is emitted.
std::vector<CoindexedCategory> coindex(const Category& c);

// True for the auxiliary/control shape (S|A)|(S|A) with A in {N, NP}.
bool is_aux_shape(const Category& c);

}  // namespace ccgsem
