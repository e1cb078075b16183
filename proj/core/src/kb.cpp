#include "ccgsem/kb.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "ccgsem/errors.hpp"

namespace ccgsem {

void KnowledgeBase::build_indexes() {
  entity_index.clear();
  pair_index.clear();
  for (int i = 0; i < static_cast<int>(events.size()); ++i) {
    std::set<std::string> vals;
    for (const auto& [role, v] : events[i].fillers) vals.insert(v);
    for (const auto& v : vals) entity_index[v].push_back(i);
    for (const auto& a : vals)
      for (const auto& b : vals)
        if (a != b) pair_index[{a, b}].push_back(i);
  }
}

bool KnowledgeBase::indexes_consistent() const {
  KnowledgeBase copy = *this;
  copy.build_indexes();
  return copy.entity_index == entity_index && copy.pair_index == pair_index;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

KnowledgeBase load_kb(std::istream& in) {
  KnowledgeBase kb;
  std::string line, section;
  int line_no = 0;
  std::set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      if (section != "schema" && section != "types" && section != "events")
        throw KbError("unknown section [" + section + "]", line_no);
      continue;
    }
    if (section == "schema") {
      auto colon = t.find(':');
      if (colon == std::string::npos)
        throw KbError("expected `type: roles`", line_no);
      std::string type = trim(t.substr(0, colon));
      auto roles = split(t.substr(colon + 1), ',');
      if (type.empty() || roles.empty())
        throw KbError("empty schema entry", line_no);
      kb.schema[type] = roles;
    } else if (section == "types") {
      auto colon = t.find(':');
      if (colon == std::string::npos)
        throw KbError("expected `entity: types`", line_no);
      std::string ent = trim(t.substr(0, colon));
      for (const auto& ty : split(t.substr(colon + 1), ','))
        kb.entity_types[ent].insert(ty);
      kb.entities.insert(ent);
    } else if (section == "events") {
      auto fields = split(line, '\t');
      if (fields.size() != 3)
        throw KbError("expected `id<TAB>type<TAB>role=filler;...`", line_no);
      EventInstance ev;
      ev.id = fields[0];
      ev.type = fields[1];
      if (!seen_ids.insert(ev.id).second)
        throw KbError("duplicate event id '" + ev.id + "'", line_no);
      auto it = kb.schema.find(ev.type);
      if (it == kb.schema.end())
        throw KbError("unknown event type '" + ev.type + "'", line_no);
      for (const auto& part : split(fields[2], ';')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos)
          throw KbError("expected role=filler", line_no);
        std::string role = trim(part.substr(0, eq));
        std::string filler = trim(part.substr(eq + 1));
        if (std::find(it->second.begin(), it->second.end(), role) ==
            it->second.end())
          throw KbError("role '" + role + "' not in schema of " + ev.type,
                        line_no);
        ev.fillers[role] = filler;
        kb.entities.insert(filler);
      }
      if (ev.fillers.empty()) throw KbError("event without fillers", line_no);
      kb.events.push_back(std::move(ev));
    } else {
      throw KbError("content before any section header", line_no);
    }
  }
  kb.build_indexes();
  return kb;
}

KnowledgeBase load_kb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw KbError("cannot open KB file: " + path);
  return load_kb(in);
}

void save_kb(std::ostream& out, const KnowledgeBase& kb) {
  out << "[schema]\n";
  for (const auto& [type, roles] : kb.schema) {
    out << type << ": ";
    for (std::size_t i = 0; i < roles.size(); ++i)
      out << (i ? ", " : "") << roles[i];
    out << "\n";
  }
  out << "[types]\n";
  for (const auto& [ent, types] : kb.entity_types) {
    out << ent << ": ";
    bool first = true;
    for (const auto& t : types) {
      out << (first ? "" : ", ") << t;
      first = false;
    }
    out << "\n";
  }
  out << "[events]\n";
  for (const auto& ev : kb.events) {
    out << ev.id << '\t' << ev.type << '\t';
    bool first = true;
    for (const auto& [role, filler] : ev.fillers) {
      out << (first ? "" : ";") << role << '=' << filler;
      first = false;
    }
    out << "\n";
  }
}

std::string GroundedGraph::str() const {
  std::vector<std::string> lines;
  auto name = [this](int i) -> std::string {
    const auto& nd = source.nodes[i];
    switch (nd.kind) {
      case UngroundedGraph::NodeKind::Entity:
        return nd.label;
      case UngroundedGraph::NodeKind::Target:
        return "TARGET";
      default:
        return node_labels[i] + "[" + source.node_name(i) + "]";
    }
  };
  for (std::size_t i = 0; i < source.edges.size(); ++i) {
    const auto& e = source.edges[i];
    lines.push_back(edge_labels[i] + "(" + name(e.src) + ", " + name(e.dst) +
                    ")");
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (const auto& l : lines) out << l << "\n";
  return out.str();
}

namespace {

using NodeKind = UngroundedGraph::NodeKind;

struct QueryEval {
  const GroundedGraph& g;
  const KnowledgeBase& kb;
  bool strict_types;

  std::vector<int> event_nodes;
  // per event node: incident role edges (edge index)
  std::vector<std::vector<int>> role_edges;
  std::vector<std::string> target_types;  // type constraints on the target
  bool impossible = false;

  explicit QueryEval(const GroundedGraph& gg, const KnowledgeBase& k,
                     bool strict)
      : g(gg), kb(k), strict_types(strict) {
    std::map<int, int> ev_pos;
    for (int i = 0; i < static_cast<int>(g.source.nodes.size()); ++i)
      if (g.source.nodes[i].kind == NodeKind::Event) {
        ev_pos[i] = static_cast<int>(event_nodes.size());
        event_nodes.push_back(i);
      }
    role_edges.resize(event_nodes.size());
    for (int ei = 0; ei < static_cast<int>(g.source.edges.size()); ++ei) {
      const auto& e = g.source.edges[ei];
      const auto skind = g.source.nodes[e.src].kind;
      const auto dkind = g.source.nodes[e.dst].kind;
      if (skind == NodeKind::Event) {
        role_edges[ev_pos[e.src]].push_back(ei);
      } else if (dkind == NodeKind::Type && g.edge_labels[ei] == "type") {
        if (!strict_types) continue;
        if (skind == NodeKind::Target)
          target_types.push_back(g.node_labels[e.dst]);
        else if (!has_type(g.source.nodes[e.src].label, g.node_labels[e.dst]))
          impossible = true;
      } else {
        // edge not anchored at an event: never satisfiable
        impossible = true;
      }
    }
  }

  bool has_type(const std::string& ent, const std::string& ty) const {
    auto it = kb.entity_types.find(ent);
    return it != kb.entity_types.end() && it->second.count(ty);
  }

  bool target_ok(const std::string& x) const {
    for (const auto& ty : target_types)
      if (!has_type(x, ty)) return false;
    return true;
  }

  // Candidate KB events for one event node given a tentative target value
  // (empty = unbound); calls fn per (instance, forced target value or "").
  // Enumerates assignments depth-first; fn(x) per complete assignment,
  // x empty when the target stayed unconstrained by role edges.
  void enumerate(const std::function<void(const std::string&)>& fn) const {
    if (impossible) return;
    walk(0, "", fn);
  }

  void walk(std::size_t at, std::string x,
            const std::function<void(const std::string&)>& fn) const {
    if (at == event_nodes.size()) {
      fn(x);
      return;
    }
    int node = event_nodes[at];
    const std::string& want_type = g.node_labels[node];
    for (const auto& inst : kb.events) {
      if (inst.type != want_type) continue;
      std::string x2 = x;
      bool ok = true;
      for (int ei : role_edges[at]) {
        const auto& e = g.source.edges[ei];
        const std::string& role = g.edge_labels[ei];
        auto f = inst.fillers.find(role);
        if (f == inst.fillers.end()) {
          ok = false;
          break;
        }
        const auto& dnode = g.source.nodes[e.dst];
        if (dnode.kind == NodeKind::Target) {
          if (x2.empty())
            x2 = f->second;
          else if (x2 != f->second)
            ok = false;
        } else if (dnode.kind == NodeKind::Type) {
          // role edge into a type node: treat as unsatisfiable
          ok = false;
        } else if (f->second != dnode.label) {
          ok = false;
        }
        if (!ok) break;
      }
      if (ok) walk(at + 1, x2, fn);
    }
  }
};

}  // namespace

std::vector<std::string> execute(const GroundedGraph& g,
                                 const KnowledgeBase& kb, bool strict_types) {
  if (!g.source.target) throw QueryError("execute: graph has no target");
  QueryEval q(g, kb, strict_types);
  std::map<std::string, long> support;
  q.enumerate([&](const std::string& x) {
    if (x.empty()) {
      // target not constrained by any role edge: every type-compatible
      // entity is supported by this assignment
      for (const auto& ent : kb.entities)
        if (q.target_ok(ent)) ++support[ent];
      return;
    }
    if (q.target_ok(x)) ++support[x];
  });
  std::vector<std::pair<std::string, long>> ranked(support.begin(),
                                                   support.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [ent, cnt] : ranked) out.push_back(ent);
  return out;
}

bool satisfiable(const GroundedGraph& g, const KnowledgeBase& kb,
                 bool strict_types) {
  if (g.source.target) return !execute(g, kb, strict_types).empty();
  QueryEval q(g, kb, strict_types);
  bool found = false;
  q.enumerate([&](const std::string&) { found = true; });
  return found;
}

std::map<std::pair<std::string, std::string>,
         std::set<std::tuple<std::string, std::string, std::string>>>
predicates_between(const std::set<std::string>& entities,
                   const KnowledgeBase& kb) {
  std::map<std::pair<std::string, std::string>,
           std::set<std::tuple<std::string, std::string, std::string>>>
      out;
  for (const auto& ev : kb.events) {
    for (const auto& [ra, va] : ev.fillers) {
      if (!entities.count(va)) continue;
      for (const auto& [rb, vb] : ev.fillers) {
        if (ra == rb) continue;
        if (!entities.count(vb)) continue;
        out[{va, vb}].insert({ev.type, ra, rb});
        out[{vb, va}].insert({ev.type, rb, ra});
      }
    }
  }
  return out;
}

}  // namespace ccgsem
