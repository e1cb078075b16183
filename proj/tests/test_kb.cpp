#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>

#include "ccgsem/errors.hpp"
#include "ccgsem/kb.hpp"

using namespace ccgsem;

namespace {

const char* kToyKb = R"([schema]
business.acquisition: acquiring_company, company_acquired, date
organization.founding: company, founder, date, location

[types]
Google: company
Nest: company
DeepMind: company
Palo_Alto: city
2014: date

[events]
a1	business.acquisition	acquiring_company=Google;company_acquired=Nest;date=2014
a2	business.acquisition	acquiring_company=Google;company_acquired=DeepMind;date=2014
f1	organization.founding	company=Nest;location=Palo_Alto
)";

KnowledgeBase toy() {
  std::stringstream ss(kToyKb);
  return load_kb(ss);
}

struct Rng {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int pick(int n) { return static_cast<int>(next() % n); }
};

// Random small KB over a tiny vocabulary.
KnowledgeBase random_kb(Rng& rng) {
  KnowledgeBase kb;
  kb.schema["t.a"] = {"r1", "r2"};
  kb.schema["t.b"] = {"r1", "r3", "r4"};
  std::vector<std::string> ents = {"E1", "E2", "E3", "E4", "E5"};
  for (const auto& e : ents) kb.entity_types[e].insert("thing");
  int n = 3 + rng.pick(8);
  for (int i = 0; i < n; ++i) {
    EventInstance ev;
    ev.id = "ev" + std::to_string(i);
    ev.type = rng.pick(2) ? "t.a" : "t.b";
    const auto& roles = kb.schema[ev.type];
    for (const auto& r : roles)
      if (rng.pick(3) != 0) ev.fillers[r] = ents[rng.pick(5)];
    if (ev.fillers.empty()) ev.fillers[roles[0]] = ents[rng.pick(5)];
    kb.events.push_back(ev);
  }
  kb.build_indexes();
  return kb;
}

// Random query graph: 1-2 event nodes, edges to entities and one target.
GroundedGraph random_query(Rng& rng, const KnowledgeBase& kb) {
  GroundedGraph g;
  std::vector<std::string> ents = {"E1", "E2", "E3", "E4", "E5"};
  int n_ev = 1 + rng.pick(2);
  int target = -1;
  auto& u = g.source;
  for (int i = 0; i < n_ev; ++i) {
    u.nodes.push_back({UngroundedGraph::NodeKind::Event, "w", i});
    g.node_labels.push_back(rng.pick(2) ? "t.a" : "t.b");
  }
  target = static_cast<int>(u.nodes.size());
  u.nodes.push_back({UngroundedGraph::NodeKind::Target, "", 10});
  u.target = target;
  g.node_labels.push_back("");
  for (int i = 0; i < n_ev; ++i) {
    const auto& roles = kb.schema.at(g.node_labels[i]);
    int n_edges = 1 + rng.pick(2);
    for (int k = 0; k < n_edges; ++k) {
      int dst;
      if (rng.pick(3) == 0) {
        dst = target;
      } else {
        dst = static_cast<int>(u.nodes.size());
        u.nodes.push_back(
            {UngroundedGraph::NodeKind::Entity, ents[rng.pick(5)], 20 + dst});
        g.node_labels.push_back(u.nodes.back().label);
      }
      u.edges.push_back({i, dst, "e" + std::to_string(k)});
      g.edge_labels.push_back(roles[rng.pick(static_cast<int>(roles.size()))]);
    }
  }
  // ensure the target is attached
  bool attached = false;
  for (const auto& e : u.edges)
    if (e.dst == target) attached = true;
  if (!attached) {
    u.edges.push_back({0, target, "et"});
    const auto& roles = kb.schema.at(g.node_labels[0]);
    g.edge_labels.push_back(roles[rng.pick(static_cast<int>(roles.size()))]);
  }
  return g;
}

// Brute-force binding enumeration: all assignments of KB instances to
// event nodes; support per consistent target value; ordering by support
// desc then id asc.
std::vector<std::string> execute_oracle(const GroundedGraph& g,
                                        const KnowledgeBase& kb) {
  std::vector<int> ev_nodes;
  for (int i = 0; i < static_cast<int>(g.source.nodes.size()); ++i)
    if (g.source.nodes[i].kind == UngroundedGraph::NodeKind::Event)
      ev_nodes.push_back(i);
  std::map<std::string, long> support;
  std::vector<int> assign(ev_nodes.size());
  std::function<void(std::size_t)> rec = [&](std::size_t at) {
    if (at == ev_nodes.size()) {
      // check all edges, collect target value
      std::string tval;
      for (int ei = 0; ei < static_cast<int>(g.source.edges.size()); ++ei) {
        const auto& e = g.source.edges[ei];
        int which = -1;
        for (std::size_t k = 0; k < ev_nodes.size(); ++k)
          if (ev_nodes[k] == e.src) which = static_cast<int>(k);
        const auto& inst = kb.events[assign[which]];
        auto f = inst.fillers.find(g.edge_labels[ei]);
        if (f == inst.fillers.end()) return;
        const auto& d = g.source.nodes[e.dst];
        if (d.kind == UngroundedGraph::NodeKind::Target) {
          if (tval.empty())
            tval = f->second;
          else if (tval != f->second)
            return;
        } else if (f->second != d.label) {
          return;
        }
      }
      if (!tval.empty()) ++support[tval];
      return;
    }
    for (int i = 0; i < static_cast<int>(kb.events.size()); ++i) {
      if (kb.events[i].type != g.node_labels[ev_nodes[at]]) continue;
      assign[at] = i;
      rec(at + 1);
    }
  };
  rec(0);
  std::vector<std::pair<std::string, long>> ranked(support.begin(),
                                                   support.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (auto& [e, c] : ranked) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("kb parses sections, types and events") {
  KnowledgeBase kb = toy();
  CHECK(kb.schema.size() == 2);
  CHECK(kb.schema.at("business.acquisition").size() == 3);
  CHECK(kb.entity_types.at("Google").count("company") == 1);
  CHECK(kb.events.size() == 3);
  CHECK(kb.entities.count("Palo_Alto") == 1);
  CHECK(kb.indexes_consistent());
}

TEST_CASE("kb save/load round-trip") {
  KnowledgeBase kb = toy();
  std::stringstream ss;
  save_kb(ss, kb);
  KnowledgeBase back = load_kb(ss);
  CHECK(back == kb);
}

TEST_CASE("kb errors carry line numbers") {
  auto expect_line = [](const char* text, int line) {
    std::stringstream ss(text);
    try {
      load_kb(ss);
      FAIL_CHECK("expected KbError for: " << text);
    } catch (const KbError& e) {
      CHECK(e.line == line);
    }
  };
  expect_line("[nope]\n", 1);
  expect_line("[schema]\nbroken line\n", 2);
  expect_line("[schema]\nt: r1\n[events]\ne1\tunknown.type\tr1=X\n", 4);
  expect_line("[schema]\nt: r1\n[events]\ne1\tt\tbad=X\n", 4);
  expect_line("[schema]\nt: r1\n[events]\ne1\tt\tr1=X\ne1\tt\tr1=Y\n", 5);
  expect_line("stray\n", 1);
}

TEST_CASE("execute answers the two-constraint query") {
  KnowledgeBase kb = toy();
  // acquired(Google, x) AND founded_in(x, Palo_Alto)
  GroundedGraph g;
  auto& u = g.source;
  u.nodes.push_back({UngroundedGraph::NodeKind::Event, "acquired", 1});
  u.nodes.push_back({UngroundedGraph::NodeKind::Event, "founded", 5});
  u.nodes.push_back({UngroundedGraph::NodeKind::Entity, "Google", 0});
  u.nodes.push_back({UngroundedGraph::NodeKind::Entity, "Palo_Alto", 7});
  u.nodes.push_back({UngroundedGraph::NodeKind::Target, "", 2});
  u.target = 4;
  u.edges.push_back({0, 2, "arg1"});
  u.edges.push_back({0, 4, "arg2"});
  u.edges.push_back({1, 4, "arg2"});
  u.edges.push_back({1, 3, "in"});
  g.node_labels = {"business.acquisition", "organization.founding", "Google",
                   "Palo_Alto", ""};
  g.edge_labels = {"acquiring_company", "company_acquired", "company",
                   "location"};
  auto answers = execute(g, kb);
  REQUIRE(answers.size() == 1);
  CHECK(answers[0] == "Nest");

  // without the founding constraint both acquisitions qualify
  g.source.edges.resize(2);
  g.edge_labels.resize(2);
  g.source.nodes[1].kind = UngroundedGraph::NodeKind::Entity;  // orphan
  auto loose = execute(g, kb);
  CHECK(loose == std::vector<std::string>{"DeepMind", "Nest"});
}

TEST_CASE("execute equals the brute-force binding oracle") {
  Rng rng{12345};
  int nonempty = 0;
  for (int trial = 0; trial < 300; ++trial) {
    KnowledgeBase kb = random_kb(rng);
    GroundedGraph g = random_query(rng, kb);
    auto got = execute(g, kb, /*strict_types=*/false);
    auto want = execute_oracle(g, kb);
    CHECK(got == want);
    if (!want.empty()) ++nonempty;
  }
  CHECK(nonempty > 20);  // the family is not degenerate
}

TEST_CASE("satisfiable without a target") {
  KnowledgeBase kb = toy();
  GroundedGraph g;
  g.source.nodes.push_back({UngroundedGraph::NodeKind::Event, "acquired", 0});
  g.source.nodes.push_back(
      {UngroundedGraph::NodeKind::Entity, "Google", 1});
  g.source.edges.push_back({0, 1, "arg1"});
  g.node_labels = {"business.acquisition", "Google"};
  g.edge_labels = {"acquiring_company"};
  CHECK(satisfiable(g, kb));
  g.edge_labels = {"company_acquired"};
  CHECK(!satisfiable(g, kb));
}

TEST_CASE("predicates_between lists symmetric role pairs") {
  KnowledgeBase kb = toy();
  auto links = predicates_between({"Google", "Nest"}, kb);
  auto fwd = links.at({"Google", "Nest"});
  CHECK(fwd.count({"business.acquisition", "acquiring_company",
                   "company_acquired"}) == 1);
  auto bwd = links.at({"Nest", "Google"});
  CHECK(bwd.count({"business.acquisition", "company_acquired",
                   "acquiring_company"}) == 1);
  CHECK(links.find({"Google", "Palo_Alto"}) == links.end());
}

TEST_CASE("execute without target throws") {
  KnowledgeBase kb = toy();
  GroundedGraph g;
  g.source.nodes.push_back({UngroundedGraph::NodeKind::Event, "x", 0});
  g.node_labels = {"business.acquisition"};
  CHECK_THROWS_AS(execute(g, kb), QueryError);
}
