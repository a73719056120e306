#include "glcip/instance.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "glcip/exact_power.hpp"
#include "json.hpp"

namespace glcip {

namespace {

/**
 * Seeded RNG with implementation-independent draws. uniform_int uses
 * unbiased rejection on raw mt19937_64 words and bernoulli(p) is exact for
 * rational p, so generated instances are byte-identical across platforms.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    auto range = static_cast<std::uint64_t>(hi - lo + 1);
    std::uint64_t min = (0 - range) % range;  // 2^64 mod range
    std::uint64_t r;
    do {
      r = gen_();
    } while (r < min);
    return lo + static_cast<std::int64_t>(r % range);
  }

  bool bernoulli(const Rational& p) {
    if (p.num() == 0) return false;
    if (p.num() == p.den()) return true;
    return uniform_int(0, p.den() - 1) < p.num();
  }

 private:
  std::mt19937_64 gen_;
};

std::int64_t parse_int_field(const std::string& token, const char* field, int line) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad " + field + " '" + token + "'");
  }
}

Rational parse_rational_field(const std::string& token, const char* field, int line) {
  try {
    return Rational::parse(token);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad " + field + " '" + token + "'");
  }
}

Instance load_text(std::istream& in) {
  Instance inst;
  std::string line;
  int lineno = 0;

  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return;
    }
    throw ParseError(std::string("unexpected end of file, expected ") + what);
  };

  next_line("header");
  std::istringstream header(line);
  std::string tag, alpha_tok, gamma_tok;
  std::int64_t n = 0, m = 0;
  if (!(header >> tag >> n >> m >> alpha_tok >> gamma_tok) || tag != "glcip")
    throw ParseError("line " + std::to_string(lineno) + ": bad header '" + line + "'");
  if (n < 1) throw ParseError("line " + std::to_string(lineno) + ": node count must be >= 1");
  inst.node_count = static_cast<int>(n);
  inst.alpha = parse_rational_field(alpha_tok, "alpha", lineno);
  inst.gamma = parse_rational_field(gamma_tok, "gamma", lineno);
  inst.thresholds.assign(inst.node_count, 0);
  inst.incentives.assign(inst.node_count, {});
  inst.costs.assign(inst.node_count, {});

  std::vector<bool> seen(inst.node_count, false);
  for (std::int64_t row = 0; row < n; ++row) {
    next_line("node line");
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind != "node")
      throw ParseError("line " + std::to_string(lineno) + ": expected node line, got '" + line + "'");
    std::string tok;
    if (!(ls >> tok)) throw ParseError("line " + std::to_string(lineno) + ": missing node id");
    std::int64_t id = parse_int_field(tok, "node id", lineno);
    if (id < 0 || id >= n) throw ParseError("line " + std::to_string(lineno) + ": node id out of range");
    if (seen[id]) throw ParseError("line " + std::to_string(lineno) + ": duplicate node id " + tok);
    seen[id] = true;
    if (!(ls >> tok)) throw ParseError("line " + std::to_string(lineno) + ": missing threshold");
    inst.thresholds[id] = parse_int_field(tok, "threshold", lineno);
    if (!(ls >> tok)) throw ParseError("line " + std::to_string(lineno) + ": missing menu size");
    std::int64_t np = parse_int_field(tok, "menu size", lineno);
    if (np < 1) throw ParseError("line " + std::to_string(lineno) + ": menu size must be >= 1");
    for (std::int64_t j = 0; j < np; ++j) {
      if (!(ls >> tok)) throw ParseError("line " + std::to_string(lineno) + ": missing incentive value");
      inst.incentives[id].push_back(parse_int_field(tok, "incentive", lineno));
      if (!(ls >> tok)) throw ParseError("line " + std::to_string(lineno) + ": missing incentive cost");
      inst.costs[id].push_back(parse_int_field(tok, "cost", lineno));
    }
  }

  for (std::int64_t row = 0; row < m; ++row) {
    next_line("arc line");
    std::istringstream ls(line);
    std::string kind, s, d, w;
    if (!(ls >> kind >> s >> d >> w) || kind != "arc")
      throw ParseError("line " + std::to_string(lineno) + ": expected arc line, got '" + line + "'");
    Arc a;
    a.src = static_cast<int>(parse_int_field(s, "arc source", lineno));
    a.dst = static_cast<int>(parse_int_field(d, "arc target", lineno));
    a.influence = parse_int_field(w, "arc influence", lineno);
    inst.arcs.push_back(a);
  }
  return inst;
}

void save_text(const Instance& inst, std::ostream& out) {
  out << "glcip " << inst.node_count << ' ' << inst.arcs.size() << ' '
      << inst.alpha.to_string() << ' ' << inst.gamma.to_string() << '\n';
  for (int i = 0; i < inst.node_count; ++i) {
    out << "node " << i << ' ' << inst.thresholds[i] << ' ' << inst.incentives[i].size();
    for (std::size_t j = 0; j < inst.incentives[i].size(); ++j)
      out << ' ' << inst.incentives[i][j] << ' ' << inst.costs[i][j];
    out << '\n';
  }
  for (const Arc& a : inst.arcs)
    out << "arc " << a.src << ' ' << a.dst << ' ' << a.influence << '\n';
}

Instance load_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad json: ") + e.what());
  }
  try {
    Instance inst;
    inst.node_count = j.at("n").get<int>();
    auto rat = [&](const char* key) {
      const auto& v = j.at(key);
      if (v.is_string()) return Rational::parse(v.get<std::string>());
      return Rational::parse(v.dump());
    };
    inst.alpha = rat("alpha");
    inst.gamma = rat("gamma");
    for (const auto& node : j.at("nodes")) {
      inst.thresholds.push_back(node.at("h").get<std::int64_t>());
      std::vector<std::int64_t> menu, cost;
      for (const auto& pw : node.at("incentives")) {
        menu.push_back(pw.at(0).get<std::int64_t>());
        cost.push_back(pw.at(1).get<std::int64_t>());
      }
      inst.incentives.push_back(std::move(menu));
      inst.costs.push_back(std::move(cost));
    }
    for (const auto& arc : j.at("arcs"))
      inst.arcs.push_back({arc.at(0).get<int>(), arc.at(1).get<int>(), arc.at(2).get<std::int64_t>()});
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad json instance: ") + e.what());
  }
}

void save_json(const Instance& inst, std::ostream& out) {
  nlohmann::json j;
  j["format"] = "glcip";
  j["version"] = 1;
  j["n"] = inst.node_count;
  j["alpha"] = inst.alpha.to_string();
  j["gamma"] = inst.gamma.to_string();
  j["nodes"] = nlohmann::json::array();
  for (int i = 0; i < inst.node_count; ++i) {
    nlohmann::json node;
    node["h"] = inst.thresholds[i];
    node["incentives"] = nlohmann::json::array();
    for (std::size_t p = 0; p < inst.incentives[i].size(); ++p)
      node["incentives"].push_back({inst.incentives[i][p], inst.costs[i][p]});
    j["nodes"].push_back(std::move(node));
  }
  j["arcs"] = nlohmann::json::array();
  for (const Arc& a : inst.arcs) j["arcs"].push_back({a.src, a.dst, a.influence});
  out << j.dump(2) << '\n';
}

}  // namespace

void Instance::finalize() {
  if (node_count < 1) throw ValidationError("instance must have at least one node");
  auto n = static_cast<std::size_t>(node_count);
  if (thresholds.size() != n || incentives.size() != n || costs.size() != n)
    throw ValidationError("per-node arrays do not match node count");
  if (!(Rational(0) < alpha && alpha <= Rational(1)))
    throw ValidationError("alpha must lie in (0, 1]");
  if (!gamma.positive()) throw ValidationError("gamma must be positive");

  for (int i = 0; i < node_count; ++i) {
    if (thresholds[i] < 1)
      throw ValidationError("node " + std::to_string(i) + ": threshold must be >= 1");
    const auto& menu = incentives[i];
    const auto& cost = costs[i];
    if (menu.empty() || menu.size() != cost.size())
      throw ValidationError("node " + std::to_string(i) + ": malformed incentive menu");
    if (menu[0] != 0 || cost[0] != 0)
      throw ValidationError("node " + std::to_string(i) + ": menu must start with free incentive 0");
    for (std::size_t p = 1; p < menu.size(); ++p) {
      if (menu[p] <= menu[p - 1])
        throw ValidationError("node " + std::to_string(i) + ": incentives must be strictly increasing");
      if (cost[p] < cost[p - 1])
        throw ValidationError("node " + std::to_string(i) + ": costs must be non-decreasing");
      if (cost[p] < 0) throw ValidationError("node " + std::to_string(i) + ": negative cost");
    }
  }

  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& a, const Arc& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  for (std::size_t t = 0; t < arcs.size(); ++t) {
    const Arc& a = arcs[t];
    if (a.src < 0 || a.src >= node_count || a.dst < 0 || a.dst >= node_count)
      throw ValidationError("arc endpoint out of range");
    if (a.src == a.dst) throw ValidationError("self-loop at node " + std::to_string(a.src));
    if (a.influence < 1) throw ValidationError("arc influence must be >= 1");
    if (t > 0 && arcs[t - 1].src == a.src && arcs[t - 1].dst == a.dst)
      throw ValidationError("duplicate arc (" + std::to_string(a.src) + "," + std::to_string(a.dst) + ")");
  }

  in_neighbors.assign(n, {});
  in_weights.assign(n, {});
  out_neighbors.assign(n, {});
  for (const Arc& a : arcs) {
    in_neighbors[a.dst].push_back(a.src);
    in_weights[a.dst].push_back(a.influence);
    out_neighbors[a.src].push_back(a.dst);
  }
}

std::int64_t Instance::in_influence_sum(int i) const {
  std::int64_t s = 0;
  for (std::int64_t d : in_weights[i]) s += d;
  return s;
}

int Instance::incentive_index(int i, std::int64_t p) const {
  const auto& menu = incentives[i];
  auto it = std::lower_bound(menu.begin(), menu.end(), p);
  if (it == menu.end() || *it != p) return -1;
  return static_cast<int>(it - menu.begin());
}

int coverage_target(const Instance& inst) {
  return static_cast<int>(inst.alpha.ceil_mul(inst.node_count));
}

Instance generate_instance(const GeneratorParams& params) {
  if (params.n < 3) throw std::invalid_argument("generator: n must be >= 3");
  if (params.k < 2 || params.k % 2 != 0 || params.k >= params.n)
    throw std::invalid_argument("generator: k must be even, >= 2 and < n");
  if (params.beta < Rational(0) || params.beta > Rational(1))
    throw std::invalid_argument("generator: beta must lie in [0, 1]");
  if (params.weight_min < 1 || params.weight_max < params.weight_min)
    throw std::invalid_argument("generator: bad weight range");
  if (!(Rational(0) < params.alpha && params.alpha <= Rational(1)))
    throw std::invalid_argument("generator: alpha must lie in (0, 1]");
  if (!params.gamma.positive()) throw std::invalid_argument("generator: gamma must be positive");

  Rng rng(params.seed);
  const int n = params.n;

  // Ring lattice: lanes j = 1..k/2, each node connected to its j-th
  // clockwise neighbor. Rewiring moves the far endpoint with probability
  // beta, rejecting self-loops and duplicate edges.
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> present;
  auto norm = [](int u, int v) { return u < v ? std::make_pair(u, v) : std::make_pair(v, u); };
  for (int lane = 1; lane <= params.k / 2; ++lane) {
    for (int i = 0; i < n; ++i) {
      int far = (i + lane) % n;
      edges.emplace_back(i, far);
      present.insert(norm(i, far));
    }
  }
  for (auto& [near, far] : edges) {
    if (!rng.bernoulli(params.beta)) continue;
    // Node connected to everyone cannot be rewired.
    bool saturated = true;
    for (int w = 0; w < n; ++w) {
      if (w != near && !present.contains(norm(near, w))) {
        saturated = false;
        break;
      }
    }
    if (saturated) continue;
    for (;;) {
      int w = static_cast<int>(rng.uniform_int(0, n - 1));
      if (w == near || present.contains(norm(near, w))) continue;
      present.erase(norm(near, far));
      present.insert(norm(near, w));
      far = w;
      break;
    }
  }

  Instance inst;
  inst.node_count = n;
  inst.alpha = params.alpha;
  inst.gamma = params.gamma;
  for (const auto& [u, v] : edges) {
    inst.arcs.push_back({u, v, rng.uniform_int(params.weight_min, params.weight_max)});
    inst.arcs.push_back({v, u, rng.uniform_int(params.weight_min, params.weight_max)});
  }

  // Thresholds are drawn against half the incoming influence so that nodes
  // stay activatable by neighbors alone.
  std::vector<std::int64_t> in_sum(n, 0);
  for (const Arc& a : inst.arcs) in_sum[a.dst] += a.influence;
  inst.thresholds.resize(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t hi = std::max<std::int64_t>(1, in_sum[i] / 2);
    inst.thresholds[i] = rng.uniform_int(1, hi);
  }

  // Shared incentive menu {0, .25h, .5h, .75h, h} around the largest
  // threshold, breakpoints rounded up, costs w = floor(p^0.9).
  std::int64_t h_hat = *std::max_element(inst.thresholds.begin(), inst.thresholds.end());
  const Rational cost_exponent(9, 10);
  std::vector<std::int64_t> menu{0};
  for (int quarter = 1; quarter <= 4; ++quarter) {
    std::int64_t p = Rational(quarter, 4).ceil_mul(h_hat);
    if (p > menu.back()) menu.push_back(p);
  }
  std::vector<std::int64_t> cost;
  cost.reserve(menu.size());
  for (std::int64_t p : menu) cost.push_back(floor_power(p, cost_exponent));
  inst.incentives.assign(n, menu);
  inst.costs.assign(n, cost);

  inst.finalize();
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  Instance inst = path.extension() == ".json" ? load_json(in) : load_text(in);
  inst.finalize();
  return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  if (path.extension() == ".json")
    save_json(inst, out);
  else
    save_text(inst, out);
}

}  // namespace glcip
