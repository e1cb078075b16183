#include "ccgsem/induction.hpp"

#include <algorithm>

namespace ccgsem {

namespace {

const std::set<std::string>& noun_tags() {
  static const std::set<std::string> t = {"NN",  "NNS", "NNP", "NNPS",
                                          "PRP", "CD"};
  return t;
}

const std::set<std::string>& verb_tags() {
  static const std::set<std::string> t = {"VB",  "VBD", "VBG", "VBN",
                                          "VBP", "VBZ", "MD"};
  return t;
}

const std::set<std::string>& other_tags() {
  static const std::set<std::string> t = {
      "IN", "DT", "JJ", "JJR", "JJS", "RB",  "RBR", "RBS", "TO", "CC",
      "WDT", "WP", "WRB", "POS", ",",  ".",  ":",   "EX",  "PDT"};
  return t;
}

}  // namespace

bool noun_like_pos(const std::string& pos) { return noun_tags().count(pos); }
bool verb_like_pos(const std::string& pos) { return verb_tags().count(pos); }
bool known_pos(const std::string& pos) {
  return noun_like_pos(pos) || verb_like_pos(pos) || other_tags().count(pos);
}

std::set<Category> seed_categories(const std::string& pos) {
  if (noun_like_pos(pos))
    return {Category::atom(Atom::N), Category::atom(Atom::NP)};
  if (verb_like_pos(pos)) return {Category::atom(Atom::S)};
  return {};
}

namespace {

int category_arity_total(const Category& c) { return c.arity(); }

// Modifier bases allowed when forming X|X: small fixed inventory.
bool modifier_base(const Category& c) {
  if (c.atomic()) {
    Atom a = c.atom_value();
    return a == Atom::N || a == Atom::NP || a == Atom::S;
  }
  // S\NP / S\N verb phrases
  if (!c.result().atomic() || c.result().atom_value() != Atom::S) return false;
  if (c.slash() != Slash::Backward || !c.argument().atomic()) return false;
  Atom a = c.argument().atom_value();
  return a == Atom::N || a == Atom::NP;
}

}  // namespace

std::vector<std::set<Category>> induce_categories(
    const std::vector<std::string>& pos_tags, const InductionConfig& cfg) {
  const std::size_t n = pos_tags.size();
  std::vector<std::set<Category>> sets(n);
  std::vector<bool> unknown(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    if (!known_pos(pos_tags[i])) {
      unknown[i] = true;
      if (!cfg.skip_unknown_pos) sets[i].insert(Category::atom(Atom::NP));
      continue;
    }
    sets[i] = seed_categories(pos_tags[i]);
  }

  // Which tokens head a PP: empty-seed token with a noun to its right.
  std::vector<bool> pp_head(n, false);
  for (std::size_t i = 0; i + 1 < n; ++i)
    pp_head[i] = !unknown[i] && seed_categories(pos_tags[i]).empty() &&
                 noun_like_pos(pos_tags[i + 1]);

  // Argument atoms visible in a direction: noun seeds anywhere plus PP
  // when a PP head occurs there.
  auto argument_atoms = [&](std::size_t i, bool left) {
    std::set<Category> atoms;
    if (left) {
      for (std::size_t j = 0; j < i; ++j) {
        if (noun_like_pos(pos_tags[j])) {
          atoms.insert(Category::atom(Atom::N));
          atoms.insert(Category::atom(Atom::NP));
        }
        if (pp_head[j]) atoms.insert(Category::atom(Atom::PP));
      }
    } else {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (noun_like_pos(pos_tags[j])) {
          atoms.insert(Category::atom(Atom::N));
          atoms.insert(Category::atom(Atom::NP));
        }
        if (pp_head[j]) atoms.insert(Category::atom(Atom::PP));
      }
    }
    return atoms;
  };

  for (int round = 0; round < cfg.rounds; ++round) {
    std::vector<std::set<Category>> prev = sets;
    for (std::size_t i = 0; i < n; ++i) {
      if (unknown[i]) continue;
      std::set<Category> grown = prev[i];

      // (c) PP head
      if (pp_head[i])
        grown.insert(Category::complex(Category::atom(Atom::PP),
                                       Slash::Forward,
                                       Category::atom(Atom::NP)));

      // (b) modifier formation over bases visible in each direction
      for (int dir = 0; dir < 2; ++dir) {
        bool left = dir == 0;
        std::set<Category> bases;
        if (left) {
          for (std::size_t j = 0; j < i; ++j)
            for (const auto& c : prev[j])
              if (modifier_base(c)) bases.insert(c);
        } else {
          for (std::size_t j = i + 1; j < n; ++j)
            for (const auto& c : prev[j])
              if (modifier_base(c)) bases.insert(c);
        }
        for (const auto& b : bases) {
          Category m = Category::complex(
              b, left ? Slash::Backward : Slash::Forward, b);
          if (m.depth() <= cfg.max_category_depth) grown.insert(m);
        }
      }

      // (a) argument closure within the round
      std::set<Category> left_atoms = argument_atoms(i, true);
      std::set<Category> right_atoms = argument_atoms(i, false);
      std::vector<Category> frontier(grown.begin(), grown.end());
      while (!frontier.empty()) {
        std::vector<Category> next;
        for (const auto& c : frontier) {
          if (category_arity_total(c) >= cfg.max_arity) continue;
          for (const auto& a : left_atoms) {
            Category g = Category::complex(c, Slash::Backward, a);
            if (g.depth() <= cfg.max_category_depth && grown.insert(g).second)
              next.push_back(g);
          }
          for (const auto& a : right_atoms) {
            Category g = Category::complex(c, Slash::Forward, a);
            if (g.depth() <= cfg.max_category_depth && grown.insert(g).second)
              next.push_back(g);
          }
        }
        frontier = std::move(next);
      }

      sets[i] = std::move(grown);
    }
  }
  return sets;
}

}  // namespace ccgsem
