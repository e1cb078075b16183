#include "ccgsem/bow.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccgsem/errors.hpp"
#include "ccgsem/perceptron.hpp"

namespace ccgsem {

const std::string kBowNull = "NULL";

namespace {

std::string lower(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::map<std::string, double> bow_features(const CorpusRecord& rec,
                                           int other_token) {
  std::map<std::string, double> f;
  f["bias"] = 1.0;
  for (int i = 0; i < static_cast<int>(rec.tokens.size()); ++i) {
    if (rec.tokens[i].is_blank) continue;
    std::string w = lower(rec.tokens[i].surface);
    f["w:" + w] += 1.0;
    if (i != other_token)
      f["ws:" + w + "|" + (i < other_token ? "L" : "R")] += 1.0;
  }
  return f;
}

std::string bow_pair_label(const std::string& answer, const std::string& other,
                           const KnowledgeBase& kb) {
  auto links = predicates_between({answer, other}, kb);
  auto it = links.find({answer, other});
  if (it == links.end() || it->second.empty()) return kBowNull;
  const auto& [type, role_blank, role_other] = *it->second.begin();
  return type + "|" + role_blank + "|" + role_other;
}

std::string BowModel::predict_label(
    const std::map<std::string, double>& feats) const {
  std::string best;
  double best_score = 0.0;
  for (const auto& lab : labels) {
    double s = 0.0;
    for (const auto& [k, v] : feats) {
      auto it = averaged.find(lab + "~" + k);
      if (it != averaged.end()) s += v * it->second;
    }
    if (best.empty() || s > best_score) {
      best = lab;
      best_score = s;
    }
  }
  return best.empty() ? kBowNull : best;
}

void BowModel::save(std::ostream& out) const {
  out << "#model\tbow\tepochs=" << epochs_trained << "\tseed=" << seed << "\n";
  out << "#labels";
  for (const auto& l : labels) out << '\t' << l;
  out << "\n";
  auto dump = [&out](const std::map<std::string, double>& m) {
    for (const auto& [k, v] : m) {
      char buf[64];
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      (void)ec;
      out << k << '\t' << std::string_view(buf, p - buf) << '\n';
    }
  };
  dump(averaged);
  out << "#raw\n";
  dump(weights);
}

BowModel BowModel::load(std::istream& in) {
  BowModel m;
  std::string line;
  if (!std::getline(in, line) || line.rfind("#model\tbow", 0) != 0)
    throw TrainError("bow model file: missing header");
  {
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) {
      if (field.rfind("epochs=", 0) == 0)
        m.epochs_trained = std::stoi(field.substr(7));
      else if (field.rfind("seed=", 0) == 0)
        m.seed = std::stoull(field.substr(5));
    }
  }
  if (!std::getline(in, line) || line.rfind("#labels", 0) != 0)
    throw TrainError("bow model file: missing label line");
  {
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, '\t');  // #labels
    while (std::getline(ss, field, '\t')) m.labels.push_back(field);
  }
  bool raw = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "#raw") {
      raw = true;
      continue;
    }
    auto tab = line.rfind('\t');
    if (tab == std::string::npos)
      throw TrainError("bow model file: bad line: " + line);
    double v = 0.0;
    std::from_chars(line.data() + tab + 1, line.data() + line.size(), v);
    (raw ? m.weights : m.averaged)[line.substr(0, tab)] = v;
  }
  return m;
}

BowModel train_bow(const std::vector<CorpusRecord>& corpus,
                   const KnowledgeBase& kb, const BowConfig& cfg) {
  struct Example {
    std::map<std::string, double> feats;
    std::string label;
  };
  std::vector<Example> examples;
  std::set<std::string> label_set{kBowNull};
  for (const auto& rec : corpus) {
    for (int i = 0; i < static_cast<int>(rec.tokens.size()); ++i) {
      if (!rec.tokens[i].entity || rec.tokens[i].is_blank) continue;
      Example ex;
      ex.feats = bow_features(rec, i);
      ex.label = bow_pair_label(rec.answer, *rec.tokens[i].entity, kb);
      label_set.insert(ex.label);
      examples.push_back(std::move(ex));
    }
  }
  if (examples.empty()) throw TrainError("train_bow: no pair examples");

  BowModel m;
  m.seed = cfg.seed;
  m.labels.assign(label_set.begin(), label_set.end());

  auto score = [&m](const std::map<std::string, double>& feats,
                    const std::string& lab) {
    double s = 0.0;
    for (const auto& [k, v] : feats) {
      auto it = m.weights.find(lab + "~" + k);
      if (it != m.weights.end()) s += v * it->second;
    }
    return s;
  };

  std::map<std::string, double> wsum;
  long steps = 0;
  std::vector<int> order(examples.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) order[i] = i;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<int> shuffled = order;
    seeded_shuffle(shuffled, cfg.seed + static_cast<std::uint64_t>(epoch));
    for (int i : shuffled) {
      const auto& ex = examples[i];
      std::string best;
      double best_score = 0.0;
      for (const auto& lab : m.labels) {
        double s = score(ex.feats, lab);
        if (best.empty() || s > best_score) {
          best = lab;
          best_score = s;
        }
      }
      if (best != ex.label) {
        for (const auto& [k, v] : ex.feats) {
          m.weights[ex.label + "~" + k] += v;
          m.weights[best + "~" + k] -= v;
        }
      }
      ++steps;
      for (const auto& [k, v] : m.weights) wsum[k] += v;
    }
  }
  m.epochs_trained = cfg.epochs;
  if (steps > 0)
    for (const auto& [k, v] : wsum)
      m.averaged[k] = v / static_cast<double>(steps);
  return m;
}

std::optional<GroundedGraph> bow_query(
    const CorpusRecord& rec,
    const std::vector<std::pair<std::string, std::string>>& pair_labels) {
  UngroundedGraph u;
  std::vector<std::string> node_labels, edge_labels;
  int target = static_cast<int>(u.nodes.size());
  u.nodes.push_back({UngroundedGraph::NodeKind::Target, "", rec.blank_index});
  u.target = target;
  node_labels.push_back("");
  bool any = false;
  int ev_count = 0;
  for (const auto& [other, label] : pair_labels) {
    if (label == kBowNull) continue;
    auto p1 = label.find('|');
    auto p2 = label.find('|', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw QueryError("bad pair label: " + label);
    std::string type = label.substr(0, p1);
    std::string role_blank = label.substr(p1 + 1, p2 - p1 - 1);
    std::string role_other = label.substr(p2 + 1);
    int ev = static_cast<int>(u.nodes.size());
    u.nodes.push_back({UngroundedGraph::NodeKind::Event, "pair", ev_count++});
    node_labels.push_back(type);
    int ent = static_cast<int>(u.nodes.size());
    u.nodes.push_back({UngroundedGraph::NodeKind::Entity, other, -1});
    node_labels.push_back(other);
    u.edges.push_back({ev, target, "blank"});
    edge_labels.push_back(role_blank);
    u.edges.push_back({ev, ent, "other"});
    edge_labels.push_back(role_other);
    any = true;
  }
  if (!any) return std::nullopt;
  GroundedGraph g;
  g.source = std::move(u);
  g.node_labels = std::move(node_labels);
  g.edge_labels = std::move(edge_labels);
  return g;
}

std::optional<std::string> predict_bow(const CorpusRecord& rec,
                                       const KnowledgeBase& kb,
                                       const BowModel& model) {
  std::vector<std::pair<std::string, std::string>> pair_labels;
  for (int i = 0; i < static_cast<int>(rec.tokens.size()); ++i) {
    if (!rec.tokens[i].entity || rec.tokens[i].is_blank) continue;
    pair_labels.emplace_back(*rec.tokens[i].entity,
                             model.predict_label(bow_features(rec, i)));
  }
  auto q = bow_query(rec, pair_labels);
  if (!q) return std::nullopt;
  auto answers = execute(*q, kb);
  if (answers.empty()) return std::nullopt;
  return answers.front();
}

}  // namespace ccgsem
