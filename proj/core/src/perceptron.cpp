#include "ccgsem/perceptron.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccgsem/errors.hpp"

namespace ccgsem {

double FeatureVector::dot(const std::map<std::string, double>& w) const {
  double s = 0.0;
  for (const auto& [k, v] : f) {
    auto it = w.find(k);
    if (it != w.end()) s += v * it->second;
  }
  return s;
}

FeatureVector featurize(const GroundedGraph& g) {
  FeatureVector fv;
  fv.f["bias"] = 1.0;
  const auto& u = g.source;
  for (int i = 0; i < static_cast<int>(u.nodes.size()); ++i) {
    switch (u.nodes[i].kind) {
      case UngroundedGraph::NodeKind::Event:
        fv.f["ev:" + u.nodes[i].label + "=" + g.node_labels[i]] += 1.0;
        break;
      case UngroundedGraph::NodeKind::Type:
        fv.f["ty:" + u.nodes[i].label + "=" + g.node_labels[i]] += 1.0;
        break;
      default:
        break;
    }
  }
  for (int ei = 0; ei < static_cast<int>(u.edges.size()); ++ei) {
    const auto& e = u.edges[ei];
    if (e.label == "type") continue;
    fv.f["edge:" + e.label + "=" + g.edge_labels[ei]] += 1.0;
    if (u.nodes[e.src].kind == UngroundedGraph::NodeKind::Event)
      fv.f["evedge:" + u.nodes[e.src].label + "|" + e.label + "=" +
           g.edge_labels[ei]] += 1.0;
  }
  return fv;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

void PerceptronModel::save(std::ostream& out) const {
  out << "#model\t" << header_tag << "\tepochs=" << epochs_trained
      << "\tseed=" << seed << "\n";
  for (const auto& [k, v] : averaged)
    out << k << '\t' << format_double(v) << '\n';
  out << "#raw\n";
  for (const auto& [k, v] : weights)
    out << k << '\t' << format_double(v) << '\n';
}

PerceptronModel PerceptronModel::load(std::istream& in) {
  PerceptronModel m;
  std::string line;
  if (!std::getline(in, line) || line.rfind("#model\t", 0) != 0)
    throw TrainError("model file: missing header");
  {
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, '\t');  // #model
    std::getline(ss, m.header_tag, '\t');
    while (std::getline(ss, field, '\t')) {
      if (field.rfind("epochs=", 0) == 0)
        m.epochs_trained = std::stoi(field.substr(7));
      else if (field.rfind("seed=", 0) == 0)
        m.seed = std::stoull(field.substr(5));
    }
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
      throw TrainError("model file: bad line: " + line);
    std::string key = line.substr(0, tab);
    double val = parse_double(line.substr(tab + 1));
    (raw ? m.weights : m.averaged)[key] = val;
  }
  return m;
}

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

void seeded_shuffle(std::vector<int>& v, std::uint64_t seed) {
  std::uint64_t state = seed;
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uint64_t j = splitmix64(state) % i;
    std::swap(v[i - 1], v[j]);
  }
}

PerceptronModel train(const std::vector<CandidateSet>& corpus,
                      const PerceptronConfig& cfg, TrainStats* stats) {
  TrainStats local;
  TrainStats& st = stats ? *stats : local;

  std::vector<int> usable;
  for (int i = 0; i < static_cast<int>(corpus.size()); ++i) {
    if (corpus[i].candidates.empty()) continue;
    if (corpus[i].positives.empty()) {
      ++st.skipped_no_positive;
      continue;
    }
    usable.push_back(i);
  }
  if (usable.empty()) throw TrainError("train: no usable examples");

  // cache feature vectors
  std::map<int, std::vector<FeatureVector>> feats;
  for (int i : usable) {
    auto& v = feats[i];
    for (const auto& c : corpus[i].candidates) v.push_back(featurize(c));
  }

  PerceptronModel m;
  m.seed = cfg.seed;
  std::map<std::string, double> wsum;  // running sum of weight snapshots
  long steps = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<int> order = usable;
    seeded_shuffle(order, cfg.seed + static_cast<std::uint64_t>(epoch));
    long errors = 0;
    for (int i : order) {
      const auto& cs = corpus[i];
      const auto& fvs = feats[i];
      // argmax over all candidates with current raw weights;
      // deterministic tie-break by candidate order (canonical)
      int best = 0;
      double best_score = fvs[0].dot(m.weights);
      for (int c = 1; c < static_cast<int>(fvs.size()); ++c) {
        double s = fvs[c].dot(m.weights);
        if (s > best_score) {
          best_score = s;
          best = c;
        }
      }
      bool best_is_positive = false;
      for (int p : cs.positives)
        if (p == best) best_is_positive = true;
      if (!best_is_positive) {
        ++errors;
        ++st.updates;
        int target = cs.positives[0];
        double target_score = fvs[target].dot(m.weights);
        for (int p : cs.positives) {
          double s = fvs[p].dot(m.weights);
          if (s > target_score) {
            target_score = s;
            target = p;
          }
        }
        for (const auto& [k, v] : fvs[target].f) m.weights[k] += v;
        for (const auto& [k, v] : fvs[best].f) m.weights[k] -= v;
      }
      ++steps;
      for (const auto& [k, v] : m.weights) wsum[k] += v;
    }
    st.errors_per_epoch.push_back(errors);
  }
  m.epochs_trained = cfg.epochs;
  if (steps > 0)
    for (const auto& [k, v] : wsum)
      m.averaged[k] = v / static_cast<double>(steps);
  return m;
}

}  // namespace ccgsem
