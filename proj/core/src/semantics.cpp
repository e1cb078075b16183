#include "ccgsem/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "ccgsem/errors.hpp"

namespace ccgsem {

int GraphBuilder::add_node(UngroundedGraph::NodeKind kind,
                           const std::string& label, int token_index) {
  g_.nodes.push_back({kind, label, token_index});
  if (kind == UngroundedGraph::NodeKind::Target)
    g_.target = static_cast<int>(g_.nodes.size()) - 1;
  return static_cast<int>(g_.nodes.size()) - 1;
}

void GraphBuilder::add_edge(int src, const std::string& label, int dst) {
  g_.edges.push_back({src, dst, label});
}

UngroundedGraph GraphBuilder::finish() const {
  UngroundedGraph out = g_;
  std::sort(out.edges.begin(), out.edges.end(),
            [](const UngroundedGraph::Edge& a, const UngroundedGraph::Edge& b) {
              return std::tie(a.src, a.label, a.dst) <
                     std::tie(b.src, b.label, b.dst);
            });
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end(),
                              [](const UngroundedGraph::Edge& a,
                                 const UngroundedGraph::Edge& b) {
                                return a.src == b.src && a.dst == b.dst &&
                                       a.label == b.label;
                              }),
                  out.edges.end());
  out.canonicalize();
  return out;
}

namespace {

using NodeKind = UngroundedGraph::NodeKind;

std::string lemma_of(const Token& t) {
  std::string s = t.surface;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool noun_atom(const Category& c) {
  return c.atomic() &&
         (c.atom_value() == Atom::N || c.atom_value() == Atom::NP);
}

// S\A with A in {N, NP}
bool vp_shape(const Category& c) {
  return !c.atomic() && c.slash() == Slash::Backward && c.result().atomic() &&
         c.result().atom_value() == Atom::S && noun_atom(c.argument());
}

SemanticExpr saturated(std::vector<int> heads, bool is_type = false) {
  SemanticExpr v;
  v.heads = std::move(heads);
  v.is_type = is_type;
  return v;
}

void require_value(const SemanticExpr& v, const char* what) {
  if (v.arity != 0 || v.is_conj)
    throw ComposeError(std::string("unsaturated value where ") + what +
                       " expected");
}

SemanticExpr apply_sem(const SemanticExpr& f, const SemanticExpr& a) {
  if (!f.apply) throw ComposeError("slot-arity mismatch in composition");
  return f.apply(a);
}

// --- event template --------------------------------------------------

struct ArgSpec {
  bool is_pp = false;
  std::string label;  // argN for noun arguments
};

struct EventState {
  GraphBuilder* b;
  int ev;
  std::vector<ArgSpec> specs;
};

SemanticExpr event_chain(std::shared_ptr<const EventState> st,
                         std::size_t at) {
  SemanticExpr e;
  e.heads = {st->ev};
  e.arity = static_cast<int>(st->specs.size() - at);
  if (e.arity == 0) return e;
  e.apply = [st, at](const SemanticExpr& v) -> SemanticExpr {
    const ArgSpec& spec = st->specs[at];
    if (spec.is_pp) {
      if (!v.is_ppfrag)
        throw ComposeError("PP argument slot fed a non-PP value");
      for (int h : v.heads) st->b->add_edge(st->ev, v.pp_label, h);
    } else {
      require_value(v, "argument");
      for (int h : v.heads) st->b->add_edge(st->ev, spec.label, h);
    }
    return event_chain(st, at + 1);
  };
  return e;
}

// One argN or preposition edge per category argument, consumed outermost
// first. The subject (innermost backward noun argument) maps to arg1, or
// arg2 for passive participles; the other noun arguments take the free
// indexes in combination order.
SemanticExpr event_expr(GraphBuilder& b, const std::string& lemma,
                        int token_index, const Category& cat, bool passive) {
  auto st = std::make_shared<EventState>();
  st->b = &b;
  st->ev = b.add_node(NodeKind::Event, lemma, token_index);

  std::vector<Category> args;  // outermost first
  std::vector<Slash> slashes;
  Category c = cat;
  while (!c.atomic()) {
    args.push_back(c.argument());
    slashes.push_back(c.slash());
    c = c.result();
  }
  int subject = -1;
  if (!args.empty() && slashes.back() == Slash::Backward &&
      noun_atom(args.back()))
    subject = static_cast<int>(args.size()) - 1;

  const int subject_index = passive ? 2 : 1;
  st->specs.resize(args.size());
  int next = 1;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].atomic() && args[i].atom_value() == Atom::PP) {
      st->specs[i].is_pp = true;
      continue;
    }
    int idx;
    if (static_cast<int>(i) == subject) {
      idx = subject_index;
    } else {
      if (subject >= 0 && next == subject_index) ++next;
      idx = next++;
    }
    st->specs[i].label = "arg" + std::to_string(idx);
  }
  return event_chain(st, 0);
}

// --- other templates -------------------------------------------------

SemanticExpr identity_expr() {
  SemanticExpr e;
  e.arity = 1;
  e.apply = [](const SemanticExpr& v) { return v; };
  return e;
}

SemanticExpr passthrough_expr() {
  SemanticExpr e;
  e.arity = 1;
  e.apply = [](const SemanticExpr& v) {
    require_value(v, "noun");
    return v;
  };
  return e;
}

// (X|X)|A with A a noun atom: edge labeled by the lemma from the heads
// of the modified constituent to the A argument.
SemanticExpr prep_expr(GraphBuilder& b, const std::string& lemma) {
  SemanticExpr e;
  e.arity = 2;
  e.apply = [&b, lemma](const SemanticExpr& np) -> SemanticExpr {
    require_value(np, "preposition object");
    std::vector<int> dst = np.heads;
    SemanticExpr mod;
    mod.arity = 1;
    mod.apply = [&b, lemma, dst](const SemanticExpr& x) -> SemanticExpr {
      for (int h : x.heads)
        for (int d : dst) b.add_edge(h, lemma, d);
      return x;  // heads and any remaining slots unchanged
    };
    return mod;
  };
  return e;
}

SemanticExpr ppfrag_expr(const std::string& lemma) {
  SemanticExpr e;
  e.arity = 1;
  e.apply = [lemma](const SemanticExpr& np) -> SemanticExpr {
    require_value(np, "preposition object");
    SemanticExpr frag;
    frag.heads = np.heads;
    frag.is_ppfrag = true;
    frag.pp_label = lemma;
    return frag;
  };
  return e;
}

// (NP\NP)/(S\NP): bind the modified NP into the clause's open slot.
SemanticExpr relpron_expr() {
  SemanticExpr e;
  e.arity = 2;
  e.apply = [](const SemanticExpr& clause) -> SemanticExpr {
    if (clause.arity != 1)
      throw ComposeError("relative clause is not a one-place predicate");
    SemanticExpr inner;
    inner.arity = 1;
    inner.apply = [clause](const SemanticExpr& np) -> SemanticExpr {
      require_value(np, "modified NP");
      clause.apply(np);
      SemanticExpr out;
      out.heads = np.heads;
      return out;
    };
    return inner;
  };
  return e;
}

// ((S\NP)\(S\NP))/(S\NP): the clause shares the modified VP's subject.
SemanticExpr vp_relative_expr() {
  SemanticExpr e;
  e.arity = 3;
  e.apply = [](const SemanticExpr& clause) -> SemanticExpr {
    if (clause.arity != 1)
      throw ComposeError("relative clause is not a one-place predicate");
    SemanticExpr mod;
    mod.arity = 1;
    mod.apply = [clause](const SemanticExpr& vp) -> SemanticExpr {
      if (vp.arity != 1)
        throw ComposeError("clause modifier applied to a non-VP");
      SemanticExpr joint;
      joint.heads = vp.heads;
      joint.arity = 1;
      joint.apply = [clause, vp](const SemanticExpr& subj) -> SemanticExpr {
        SemanticExpr main = vp.apply(subj);
        clause.apply(subj);
        return main;
      };
      return joint;
    };
    return mod;
  };
  return e;
}

// distinct-head auxiliary co-indexation: control-style event sharing the
// embedded clause's subject
SemanticExpr control_expr(GraphBuilder& b, const std::string& lemma,
                          int token_index) {
  int ev = b.add_node(NodeKind::Event, lemma, token_index);
  SemanticExpr e;
  e.heads = {ev};
  e.arity = 2;
  e.apply = [&b, ev](const SemanticExpr& clause) -> SemanticExpr {
    SemanticExpr inner;
    inner.heads = {ev};
    inner.arity = 1;
    inner.apply = [&b, ev, clause](const SemanticExpr& subj) -> SemanticExpr {
      if (clause.arity == 1) clause.apply(subj);
      for (int h : subj.heads) b.add_edge(ev, "arg1", h);
      SemanticExpr out;
      out.heads = {ev};
      return out;
    };
    return inner;
  };
  return e;
}

// entity token carrying a modifier category X|X: apposition-style merge
SemanticExpr entity_merge_expr(GraphBuilder& b, const Token& t,
                               int token_index) {
  int node = b.add_node(NodeKind::Entity, *t.entity, token_index);
  SemanticExpr e;
  e.heads = {node};
  e.arity = 1;
  e.apply = [node](const SemanticExpr& v) -> SemanticExpr {
    require_value(v, "modified phrase");
    SemanticExpr out;
    out.heads = v.heads;
    out.heads.push_back(node);
    return out;
  };
  return e;
}

// conjunct merge; a type conjunct becomes a type edge on the other side
SemanticExpr coordinate(GraphBuilder& b, const SemanticExpr& left,
                        const SemanticExpr& right) {
  require_value(left, "left conjunct");
  require_value(right, "right conjunct");
  if (right.is_type && !left.is_type) {
    for (int h : left.heads)
      for (int t : right.heads) b.add_edge(h, "type", t);
    return saturated(left.heads);
  }
  if (left.is_type && !right.is_type) {
    for (int h : right.heads)
      for (int t : left.heads) b.add_edge(h, "type", t);
    return saturated(right.heads);
  }
  std::vector<int> heads = left.heads;
  heads.insert(heads.end(), right.heads.begin(), right.heads.end());
  return saturated(std::move(heads), left.is_type && right.is_type);
}

bool identified_aux_heads(const CoindexedCategory& cc) {
  // positions of (S_a|A_b)|(S_c|A_d) are [a, b, c, d]
  return cc.heads.size() == 4 && cc.heads[0] == cc.heads[2];
}

SemanticExpr lexical_semantics_at(const Token& t, const CoindexedCategory& cc,
                                  GraphBuilder& b, int token_index) {
  const Category& cat = cc.category;
  const std::string lemma = lemma_of(t);

  auto fail = [&]() -> SemanticExpr {
    throw ComposeError("no semantics template for token '" + t.surface +
                       "' with category " + cat.str());
  };

  if (t.is_blank) {
    int node = b.add_node(NodeKind::Target, "", token_index);
    return saturated({node});
  }

  if (cat.atomic()) {
    switch (cat.atom_value()) {
      case Atom::Conj: {
        SemanticExpr e;
        e.is_conj = true;
        return e;
      }
      case Atom::Comma: {
        SemanticExpr e;
        e.vacuous = true;
        return e;
      }
      case Atom::S:
        return event_expr(b, lemma, token_index, cat, t.pos == "VBN");
      case Atom::N:
      case Atom::NP: {
        if (t.entity) {
          int node = b.add_node(NodeKind::Entity, *t.entity, token_index);
          return saturated({node});
        }
        int node = b.add_node(NodeKind::Type, lemma, token_index);
        return saturated({node}, /*is_type=*/true);
      }
      case Atom::PP:
        return fail();
    }
    return fail();
  }

  // auxiliary / control (S|A)|(S|A)
  if (is_aux_shape(cat)) {
    if (identified_aux_heads(cc)) return identity_expr();
    return control_expr(b, lemma, token_index);
  }

  // relative pronoun (X\X)/(S\NP), X a noun atom
  if (cat.result().is_modifier() && noun_atom(cat.result().result()) &&
      vp_shape(cat.argument()))
    return relpron_expr();

  // clause modifier ((S\NP)|(S\NP))/(S\NP)
  if (cat.result().is_modifier() && vp_shape(cat.result().result()) &&
      vp_shape(cat.argument()))
    return vp_relative_expr();

  // PP/NP
  if (cat.result().atomic() && cat.result().atom_value() == Atom::PP &&
      noun_atom(cat.argument()))
    return ppfrag_expr(lemma);

  // preposition shape (X|X)|A with a noun argument
  if (cat.result().is_modifier() && noun_atom(cat.argument()))
    return prep_expr(b, lemma);

  // determiner NP|N
  if (cat.result().atomic() && cat.result().atom_value() == Atom::NP &&
      cat.argument().atomic() && cat.argument().atom_value() == Atom::N)
    return passthrough_expr();

  // entity carrying a modifier category: apposition merge
  if (t.entity && cat.is_modifier()) return entity_merge_expr(b, t, token_index);

  // plain modifier X|X: semantically vacuous
  if (cat.is_modifier()) return identity_expr();

  // verb: spine rooted in S with atomic noun/PP arguments
  if (cat.spine_result() == Atom::S) {
    bool ok = true;
    for (Category c = cat; !c.atomic(); c = c.result()) {
      const Category& a = c.argument();
      if (!(noun_atom(a) || (a.atomic() && a.atom_value() == Atom::PP)))
        ok = false;
    }
    if (ok) return event_expr(b, lemma, token_index, cat, t.pos == "VBN");
  }

  return fail();
}

SemanticExpr eval_node(const Derivation::Node& n,
                       const std::vector<Token>& tokens, GraphBuilder& b) {
  if (n.is_leaf())
    return lexical_semantics_at(tokens[n.token_index], *n.lexical, b,
                                n.token_index);

  SemanticExpr l = eval_node(*n.left, tokens, b);
  SemanticExpr r = eval_node(*n.right, tokens, b);

  if (n.combinator == "fwd-app") return apply_sem(l, r);
  if (n.combinator == "bwd-app") return apply_sem(r, l);
  if (n.combinator == "fwd-comp" || n.combinator == "bwd-comp") {
    SemanticExpr f = n.combinator == "fwd-comp" ? l : r;
    SemanticExpr g = n.combinator == "fwd-comp" ? r : l;
    SemanticExpr out;
    out.heads = f.heads;
    out.arity = f.arity + g.arity - 1;
    out.apply = [f, g](const SemanticExpr& z) {
      return apply_sem(f, apply_sem(g, z));
    };
    return out;
  }
  if (n.combinator == "conj") {
    if (!l.is_conj) throw ComposeError("conj combinator without conjunction");
    SemanticExpr out;
    out.heads = r.heads;
    out.arity = 1;
    out.apply = [&b, r](const SemanticExpr& left) {
      return coordinate(b, left, r);
    };
    return out;
  }
  throw ComposeError("unknown combinator " + n.combinator);
}

}  // namespace

SemanticExpr lexical_semantics(const Token& t, const CoindexedCategory& c,
                               GraphBuilder& builder) {
  return lexical_semantics_at(t, c, builder, 0);
}

std::vector<UngroundedGraph> compose(const Derivation& d,
                                     const std::vector<Token>& tokens) {
  GraphBuilder b;
  SemanticExpr root = eval_node(*d.root, tokens, b);
  if (root.arity != 0 || root.is_conj)
    throw ComposeError("incomplete semantics: unsaturated slot at root");
  return {b.finish()};
}

}  // namespace ccgsem
