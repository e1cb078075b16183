#include "ccgsem/category.hpp"

#include <cassert>
#include <sstream>

#include "ccgsem/errors.hpp"

namespace ccgsem {

struct Category::Node {
  bool is_atom;
  Atom atom;
  Slash slash;
  Category result;
  Category argument;
};

const char* atom_name(Atom a) {
  switch (a) {
    case Atom::S: return "S";
    case Atom::NP: return "NP";
    case Atom::N: return "N";
    case Atom::PP: return "PP";
    case Atom::Conj: return "conj";
    case Atom::Comma: return ",";
  }
  return "?";
}

Category Category::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->is_atom = true;
  n->atom = a;
  return Category(std::move(n));
}

Category Category::complex(const Category& result, Slash s,
                           const Category& argument) {
  assert(result.valid() && argument.valid());
  auto n = std::make_shared<Node>();
  n->is_atom = false;
  n->slash = s;
  n->result = result;
  n->argument = argument;
  return Category(std::move(n));
}

bool Category::atomic() const { return node_->is_atom; }
Atom Category::atom_value() const { return node_->atom; }
const Category& Category::result() const { return node_->result; }
const Category& Category::argument() const { return node_->argument; }
Slash Category::slash() const { return node_->slash; }

int Category::depth() const {
  if (atomic()) return 0;
  return 1 + std::max(result().depth(), argument().depth());
}

int Category::arity() const {
  int n = 0;
  Category c = *this;
  while (!c.atomic()) {
    ++n;
    c = c.result();
  }
  return n;
}

Atom Category::spine_result() const {
  Category c = *this;
  while (!c.atomic()) c = c.result();
  return c.atom_value();
}

bool Category::is_modifier() const {
  return !atomic() && result() == argument();
}

std::string Category::str() const {
  if (atomic()) return atom_name(atom_value());
  auto part = [](const Category& c) {
    return c.atomic() ? c.str() : "(" + c.str() + ")";
  };
  return part(result()) + (slash() == Slash::Forward ? "/" : "\\") +
         part(argument());
}

bool Category::operator==(const Category& o) const {
  if (node_ == o.node_) return true;
  if (atomic() != o.atomic()) return false;
  if (atomic()) return atom_value() == o.atom_value();
  return slash() == o.slash() && result() == o.result() &&
         argument() == o.argument();
}

bool Category::operator<(const Category& o) const {
  // atoms before complex; then componentwise
  if (atomic() != o.atomic()) return atomic();
  if (atomic()) return atom_value() < o.atom_value();
  if (result() != o.result()) return result() < o.result();
  if (slash() != o.slash()) return slash() < o.slash();
  return argument() < o.argument();
}

namespace {

class CategoryParser {
 public:
  explicit CategoryParser(std::string_view s) : s_(s) {}

  Category parse() {
    Category c = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw CategoryParseError("trailing characters in category", pos_);
    return c;
  }

 private:
  Category expr() {
    Category left = term();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      char ch = s_[pos_];
      if (ch == '/' || ch == '\\') {
        ++pos_;
        Category right = term();
        left = Category::complex(
            left, ch == '/' ? Slash::Forward : Slash::Backward, right);
      } else {
        break;
      }
    }
    return left;
  }

  Category term() {
    skip_ws();
    if (pos_ >= s_.size())
      throw CategoryParseError("unexpected end of category", pos_);
    if (s_[pos_] == '(') {
      ++pos_;
      Category c = expr();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw CategoryParseError("expected ')'", pos_);
      ++pos_;
      return c;
    }
    return atom();
  }

  Category atom() {
    // longest match first
    static const struct { const char* name; Atom a; } kAtoms[] = {
        {"conj", Atom::Conj}, {"comma", Atom::Comma}, {"NP", Atom::NP},
        {"N", Atom::N},       {"PP", Atom::PP},       {"S", Atom::S},
        {",", Atom::Comma},
    };
    for (const auto& e : kAtoms) {
      std::string_view n(e.name);
      if (s_.substr(pos_, n.size()) == n) {
        pos_ += n.size();
        return Category::atom(e.a);
      }
    }
    throw CategoryParseError("unknown atom", pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Category parse_category(std::string_view s) {
  return CategoryParser(s).parse();
}

std::string CoindexedCategory::str() const {
  std::size_t idx = 0;
  std::ostringstream out;
  // mirror Category::str() but append _v after every atom
  auto render = [&](auto&& self, const Category& c, bool parens) -> void {
    if (c.atomic()) {
      out << atom_name(c.atom_value()) << "_" << heads[idx++];
      return;
    }
    if (parens) out << "(";
    self(self, c.result(), !c.result().atomic());
    out << (c.slash() == Slash::Forward ? "/" : "\\");
    self(self, c.argument(), !c.argument().atomic());
    if (parens) out << ")";
  };
  render(render, category, false);
  return out.str();
}

bool CoindexedCategory::operator<(const CoindexedCategory& o) const {
  if (category != o.category) return category < o.category;
  if (heads != o.heads) return heads < o.heads;
  return root_head < o.root_head;
}

bool is_aux_shape(const Category& c) {
  if (c.atomic() || !c.is_modifier()) return false;
  const Category& r = c.result();
  if (r.atomic()) return false;
  if (!r.result().atomic() || r.result().atom_value() != Atom::S) return false;
  if (!r.argument().atomic()) return false;
  Atom a = r.argument().atom_value();
  return a == Atom::N || a == Atom::NP;
}

namespace {

// Default head assignment: modifiers X|X share variables between the two
// X copies; otherwise result and argument are independent. Returns the
// variables in atomic-position order plus the root variable.
void assign_default(const Category& c, int& fresh, std::vector<int>& vars,
                    int& root) {
  if (c.atomic()) {
    root = fresh++;
    vars.push_back(root);
    return;
  }
  if (c.is_modifier()) {
    std::size_t start = vars.size();
    assign_default(c.result(), fresh, vars, root);
    std::size_t len = vars.size() - start;
    for (std::size_t i = 0; i < len; ++i) vars.push_back(vars[start + i]);
    return;
  }
  assign_default(c.result(), fresh, vars, root);
  int arg_root = 0;
  assign_default(c.argument(), fresh, vars, arg_root);
}

void renumber(CoindexedCategory& cc) {
  std::vector<int> map(cc.heads.size() + 1, -1);
  int next = 0;
  for (int& v : cc.heads) {
    if (map[v] < 0) map[v] = next++;
    v = map[v];
  }
  cc.root_head = map[cc.root_head];
}

}  // namespace

std::vector<CoindexedCategory> coindex(const Category& c) {
  std::vector<CoindexedCategory> out;

  CoindexedCategory def;
  def.category = c;
  int fresh = 0;
  assign_default(c, fresh, def.heads, def.root_head);
  renumber(def);
  out.push_back(def);

  if (is_aux_shape(c)) {
    // (S_x|A_y)|(S_z|A_y): distinct clause heads, shared argument head
    CoindexedCategory alt;
    alt.category = c;
    alt.heads = {0, 1, 2, 1};
    alt.root_head = 0;
    if (!(alt == def)) out.push_back(alt);
  }
  return out;
}

}  // namespace ccgsem
