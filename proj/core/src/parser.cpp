#include "ccgsem/parser.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccgsem/errors.hpp"

namespace ccgsem {

std::optional<std::pair<Category, std::string>> apply_combinator(
    const Category& left, const Category& right) {
  // forward application X/Y . Y -> X
  if (!left.atomic() && left.slash() == Slash::Forward &&
      left.argument() == right)
    return std::make_pair(left.result(), "fwd-app");
  // backward application Y . X\Y -> X
  if (!right.atomic() && right.slash() == Slash::Backward &&
      right.argument() == left)
    return std::make_pair(right.result(), "bwd-app");
  // forward composition X/Y . Y/Z -> X/Z
  if (!left.atomic() && left.slash() == Slash::Forward && !right.atomic() &&
      right.slash() == Slash::Forward && left.argument() == right.result())
    return std::make_pair(
        Category::complex(left.result(), Slash::Forward, right.argument()),
        "fwd-comp");
  // backward composition Y\Z . X\Y -> X\Z
  if (!left.atomic() && left.slash() == Slash::Backward && !right.atomic() &&
      right.slash() == Slash::Backward && right.argument() == left.result())
    return std::make_pair(
        Category::complex(right.result(), Slash::Backward, left.argument()),
        "bwd-comp");
  // conj expansion: conj . X -> X\X
  if (left.atomic() && left.atom_value() == Atom::Conj)
    return std::make_pair(Category::complex(right, Slash::Backward, right),
                          "conj");
  return std::nullopt;
}

namespace {

void node_str(const Derivation::Node& n, std::ostream& out) {
  if (n.is_leaf()) {
    out << "(lex " << n.token_index << " " << n.lexical->str() << ")";
    return;
  }
  out << "(" << n.combinator << " " << n.category.str() << " ";
  node_str(*n.left, out);
  out << " ";
  node_str(*n.right, out);
  out << ")";
}

void leaf_depth_and_combinators(const Derivation::Node& n, int& depth_sum,
                                std::set<std::string>& combs) {
  if (n.is_leaf()) {
    depth_sum += n.category.depth();
    return;
  }
  combs.insert(n.combinator);
  leaf_depth_and_combinators(*n.left, depth_sum, combs);
  leaf_depth_and_combinators(*n.right, depth_sum, combs);
}

}  // namespace

std::string Derivation::str() const {
  std::ostringstream out;
  node_str(*root, out);
  return out.str();
}

double score_derivation(const Derivation& d) {
  int depth_sum = 0;
  std::set<std::string> combs;
  leaf_depth_and_combinators(*d.root, depth_sum, combs);
  return -static_cast<double>(combs.size()) - 0.1 * depth_sum;
}

bool revalidate(const Derivation& d) {
  auto check = [](auto&& self, const Derivation::Node& n) -> bool {
    if (n.is_leaf()) return n.category == n.lexical->category;
    if (!self(self, *n.left) || !self(self, *n.right)) return false;
    auto r = apply_combinator(n.left->category, n.right->category);
    return r && r->first == n.category && r->second == n.combinator;
  };
  return check(check, *d.root);
}

std::set<CoindexedCategory> coindex_all(const std::set<Category>& cats) {
  std::set<CoindexedCategory> out;
  for (const auto& c : cats)
    for (const auto& cc : coindex(c)) out.insert(cc);
  return out;
}

namespace {

struct Item {
  std::shared_ptr<const Derivation::Node> node;
  double score;        // heuristic score of the partial tree
  std::string canon;   // canonical string, tie-break key
};

bool item_order(const Item& a, const Item& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.canon < b.canon;
}

Item make_item(std::shared_ptr<const Derivation::Node> node) {
  Derivation d;
  d.root = node;
  Item it;
  it.score = score_derivation(d);
  it.canon = d.str();
  it.node = std::move(node);
  return it;
}

}  // namespace

std::vector<Derivation> parse(
    const std::vector<Token>& tokens,
    const std::vector<std::set<CoindexedCategory>>& candidates,
    const ParseConfig& cfg) {
  const std::size_t n = tokens.size();
  if (n == 0) throw QueryError("parse: empty sentence");
  if (candidates.size() != n)
    throw QueryError("parse: candidate list length mismatch");

  // chart[i][j] spans tokens [i, i+j+1)
  std::vector<std::vector<std::vector<Item>>> chart(
      n, std::vector<std::vector<Item>>(n));

  for (std::size_t i = 0; i < n; ++i) {
    if (candidates[i].empty())
      throw CoverageError("no candidate categories for token '" +
                              tokens[i].surface + "'",
                          tokens[i].surface);
    for (const auto& cc : candidates[i]) {
      if (cc.category.depth() > cfg.max_category_depth) continue;
      auto node = std::make_shared<Derivation::Node>();
      node->token_index = static_cast<int>(i);
      node->lexical = cc;
      node->category = cc.category;
      chart[i][0].push_back(make_item(node));
    }
    if (chart[i][0].empty())
      throw CoverageError("no candidate categories for token '" +
                              tokens[i].surface + "' within depth bound",
                          tokens[i].surface);
    std::sort(chart[i][0].begin(), chart[i][0].end(), item_order);
    if (static_cast<int>(chart[i][0].size()) > cfg.beam_width)
      chart[i][0].resize(cfg.beam_width);
  }

  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = chart[i][len - 1];
      for (std::size_t split = 1; split < len; ++split) {
        const auto& left_cell = chart[i][split - 1];
        const auto& right_cell = chart[i + split][len - split - 1];
        for (const auto& li : left_cell) {
          for (const auto& ri : right_cell) {
            auto r = apply_combinator(li.node->category, ri.node->category);
            if (!r) continue;
            auto node = std::make_shared<Derivation::Node>();
            node->combinator = r->second;
            node->category = r->first;
            node->left = li.node;
            node->right = ri.node;
            cell.push_back(make_item(node));
          }
        }
      }
      std::sort(cell.begin(), cell.end(), item_order);
      if (static_cast<int>(cell.size()) > cfg.beam_width)
        cell.resize(cfg.beam_width);
    }
  }

  std::vector<Derivation> out;
  for (const auto& it : chart[0][n - 1]) {
    const Category& c = it.node->category;
    if (!c.atomic()) continue;
    Atom a = c.atom_value();
    if (a != Atom::S && a != Atom::NP) continue;
    Derivation d;
    d.root = it.node;
    d.score = it.score;
    out.push_back(std::move(d));
  }
  if (static_cast<int>(out.size()) > cfg.top_n) out.resize(cfg.top_n);
  return out;
}

}  // namespace ccgsem
