#include "careers/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace careers::io {

using nlohmann::json;

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::finite:
      return "finite";
    case Mode::stationary:
      return "stationary";
    case Mode::grid:
      return "grid";
  }
  return "finite";
}

std::string_view to_string(Format f) noexcept { return f == Format::csv ? "csv" : "json"; }

std::optional<Format> parse_format(std::string_view s) noexcept {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  return std::nullopt;
}

namespace {

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(field(key), "must be finite");
    }
  }

  template <class Int>
  void integer(const char* key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_unsigned()) {
          out = static_cast<Int>(v->get<std::uint64_t>());
        } else {
          const auto x = v->get<std::int64_t>();
          if (x < 0) throw ConfigError(field(key), "must be non-negative");
          out = static_cast<Int>(x);
        }
      } else {
        out = static_cast<Int>(v->get<std::int64_t>());
      }
    }
  }

  void string(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) throw ConfigError(field(k.c_str()), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

json to_json(const Preferences& p) {
  if (p.is_crra()) return {{"kind", "crra"}, {"rho", p.rho()}};
  json knots = json::array();
  for (const auto& k : p.knots()) knots.push_back({k.x, k.u});
  return {{"kind", "tabulated"}, {"knots", knots}};
}

Preferences preferences_from_json(const json& j, const std::string& field) {
  ObjectReader r(j, field);
  std::string kind = "crra";
  r.string("kind", kind);
  if (kind == "crra") {
    double rho = 0.5;
    r.number("rho", rho);
    r.finish();
    require(rho > 0.0 && rho <= 1.0, r.field("rho"), "must be in (0, 1]");
    return Preferences::crra(rho);
  }
  if (kind != "tabulated") throw ConfigError(r.field("kind"), "expected \"crra\" or \"tabulated\"");
  const json* k = r.find("knots");
  r.finish();
  require(k != nullptr && k->is_array(), r.field("knots"), "expected an array of [x, u] pairs");
  std::vector<Preferences::Knot> knots;
  for (const auto& pair : *k) {
    require(pair.is_array() && pair.size() == 2 && pair[0].is_number() && pair[1].is_number(),
            r.field("knots"), "expected an array of [x, u] pairs");
    knots.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  try {
    return Preferences::tabulated(std::move(knots));
  } catch (const std::exception& e) {
    throw ConfigError(r.field("knots"), e.what());
  }
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  ObjectReader root(j, "");
  const json* version = root.find("schema_version");
  require(version != nullptr, "schema_version", "required");
  require(version->is_number_integer() && version->get<std::int64_t>() == kSchemaVersion,
          "schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");

  std::string mode = "finite";
  root.string("mode", mode);
  if (mode == "finite") {
    c.mode = Mode::finite;
  } else if (mode == "stationary") {
    c.mode = Mode::stationary;
  } else if (mode == "grid") {
    c.mode = Mode::grid;
  } else {
    throw ConfigError("mode", "expected \"finite\", \"stationary\" or \"grid\"");
  }
  root.integer("threads", c.threads);
  require(c.threads >= 1, "threads", "must be >= 1");

  if (const json* m = root.find("model")) {
    ObjectReader r(*m, "model");
    r.number("delta", c.model.delta);
    require(c.model.delta > 0.0 && c.model.delta < 1.0, "model.delta", "must be in (0, 1)");
    if (const json* u = r.find("utility")) c.model.prefs = preferences_from_json(*u, "model.utility");
    std::string regime(to_string(c.model.regime));
    r.string("regime", regime);
    const auto parsed = parse_regime(regime);
    require(parsed.has_value(), "model.regime", "expected \"naive\" or \"sophisticated\"");
    c.model.regime = *parsed;
    if (const json* p = r.find("prior")) {
      ObjectReader pr(*p, "model.prior");
      double a = c.model.prior.alpha();
      double b = c.model.prior.beta();
      pr.number("alpha", a);
      pr.number("beta", b);
      pr.finish();
      require(a > 0.0, "model.prior.alpha", "must be positive");
      require(b > 0.0, "model.prior.beta", "must be positive");
      c.model.prior = BetaParams(a, b);
    }
    r.finish();
  }

  if (const json* f = root.find("finite")) {
    ObjectReader r(*f, "finite");
    r.integer("periods", c.finite.periods);
    require(c.finite.periods >= 1, "finite.periods", "must be >= 1");
    r.integer("theta_grid_size", c.finite.theta_grid_size);
    require(c.finite.theta_grid_size >= 2, "finite.theta_grid_size", "must be >= 2");
    std::string rep = c.finite.representation == ValueRepresentation::grid ? "grid" : "exact";
    r.string("representation", rep);
    require(rep == "grid" || rep == "exact", "finite.representation",
            "expected \"grid\" or \"exact\"");
    c.finite.representation = rep == "grid" ? ValueRepresentation::grid : ValueRepresentation::exact;
    if (c.finite.representation == ValueRepresentation::exact) {
      require(c.finite.periods <= kMaxExactPeriods, "finite.periods",
              "exact representation supports at most " + std::to_string(kMaxExactPeriods));
    }
    r.finish();
  }

  if (const json* s = root.find("stationary")) {
    ObjectReader r(*s, "stationary");
    r.integer("max_depth", c.stationary.max_depth);
    require(c.stationary.max_depth >= 1, "stationary.max_depth", "must be >= 1");
    r.integer("theta_grid_size", c.stationary.theta_grid_size);
    require(c.stationary.theta_grid_size >= 257, "stationary.theta_grid_size", "must be >= 257");
    r.number("tolerance", c.stationary.tolerance);
    require(c.stationary.tolerance > 0.0, "stationary.tolerance", "must be positive");
    r.integer("max_sweeps", c.stationary.max_sweeps);
    require(c.stationary.max_sweeps >= 1, "stationary.max_sweeps", "must be >= 1");
    r.finish();
  }

  if (const json* g = root.find("grid")) {
    ObjectReader r(*g, "grid");
    r.integer("points", c.grid.points);
    require(c.grid.points >= 3, "grid.points", "must be >= 3");
    r.number("phi", c.grid.phi);
    require(c.grid.phi >= 0.0 && c.grid.phi < 1.0, "grid.phi", "must be in [0, 1)");
    r.number("zbar", c.grid.zbar);
    require(c.grid.zbar > 0.0 && c.grid.zbar < 1.0, "grid.zbar", "must be in (0, 1)");
    r.integer("periods", c.grid.periods);
    require(c.grid.periods >= 1, "grid.periods", "must be >= 1");
    r.integer("node_budget", c.grid.node_budget);
    require(c.grid.node_budget >= 1, "grid.node_budget", "must be >= 1");
    r.finish();
  }

  if (const json* s = root.find("sweep")) {
    ObjectReader r(*s, "sweep");
    std::string param(to_string(c.sweep.parameter));
    r.string("parameter", param);
    const auto parsed = parse_sweep_parameter(param);
    require(parsed.has_value(), "sweep.parameter", "expected \"delta\", \"rho\" or \"depth\"");
    c.sweep.parameter = *parsed;
    if (const json* v = r.find("values")) {
      require(v->is_array(), "sweep.values", "expected an array of numbers");
      c.sweep.values.clear();
      for (const auto& x : *v) {
        require(x.is_number(), "sweep.values", "expected an array of numbers");
        c.sweep.values.push_back(x.get<double>());
      }
    }
    r.finish();
  }

  if (const json* s = root.find("simulate")) {
    ObjectReader r(*s, "simulate");
    r.integer("n_paths", c.simulate.n_paths);
    require(c.simulate.n_paths >= 1, "simulate.n_paths", "must be >= 1");
    r.integer("horizon", c.simulate.horizon);
    require(c.simulate.horizon >= 1, "simulate.horizon", "must be >= 1");
    r.integer("seed", c.simulate.seed);
    if (const json* t = r.find("theta")) {
      ObjectReader tr(*t, "simulate.theta");
      std::string kind = "prior";
      tr.string("kind", kind);
      if (kind == "prior") {
        c.simulate.theta = ThetaSource::from_prior();
      } else if (kind == "fixed") {
        double v = 0.5;
        const json* value = tr.find("value");
        require(value != nullptr, "simulate.theta.value", "required when kind is \"fixed\"");
        tr.number("value", v);
        require(v >= 0.0 && v <= 1.0, "simulate.theta.value", "must be in [0, 1]");
        c.simulate.theta = ThetaSource::fixed(v);
      } else {
        throw ConfigError("simulate.theta.kind", "expected \"prior\" or \"fixed\"");
      }
      tr.finish();
    }
    if (const json* p = r.find("policy_file")) {
      require(p->is_string() || p->is_null(), "simulate.policy_file", "expected a string");
      if (p->is_string()) {
        c.simulate.policy_file = p->get<std::string>();
      } else {
        c.simulate.policy_file.reset();
      }
    }
    r.finish();
  }

  if (const json* o = root.find("output")) {
    ObjectReader r(*o, "output");
    r.string("dir", c.output.dir);
    std::string format(to_string(c.output.format));
    r.string("format", format);
    const auto parsed = parse_format(format);
    require(parsed.has_value(), "output.format", "expected \"csv\" or \"json\"");
    c.output.format = *parsed;
    r.finish();
  }

  root.finish();
  return c;
}

RunConfig parse_config_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const RunConfig& c) {
  json theta = c.simulate.theta.kind == ThetaSource::Kind::prior
                   ? json{{"kind", "prior"}}
                   : json{{"kind", "fixed"}, {"value", c.simulate.theta.value}};
  return {
      {"schema_version", c.schema_version},
      {"mode", to_string(c.mode)},
      {"threads", c.threads},
      {"model",
       {{"delta", c.model.delta},
        {"utility", to_json(c.model.prefs)},
        {"regime", to_string(c.model.regime)},
        {"prior", {{"alpha", c.model.prior.alpha()}, {"beta", c.model.prior.beta()}}}}},
      {"finite",
       {{"periods", c.finite.periods},
        {"theta_grid_size", c.finite.theta_grid_size},
        {"representation",
         c.finite.representation == ValueRepresentation::grid ? "grid" : "exact"}}},
      {"stationary",
       {{"max_depth", c.stationary.max_depth},
        {"theta_grid_size", c.stationary.theta_grid_size},
        {"tolerance", c.stationary.tolerance},
        {"max_sweeps", c.stationary.max_sweeps}}},
      {"grid",
       {{"points", c.grid.points},
        {"phi", c.grid.phi},
        {"zbar", c.grid.zbar},
        {"periods", c.grid.periods},
        {"node_budget", c.grid.node_budget}}},
      {"sweep", {{"parameter", to_string(c.sweep.parameter)}, {"values", c.sweep.values}}},
      {"simulate",
       {{"n_paths", c.simulate.n_paths},
        {"horizon", c.simulate.horizon},
        {"seed", c.simulate.seed},
        {"theta", theta},
        {"policy_file", c.simulate.policy_file ? json(*c.simulate.policy_file) : json(nullptr)}}},
      {"output", {{"dir", c.output.dir}, {"format", to_string(c.output.format)}}},
  };
}

std::string config_hash(const RunConfig& c) {
  // Where results are written does not change them.
  json j = to_json(c);
  j["output"].erase("dir");
  const std::string canonical = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FiniteHorizonSpec finite_spec(const RunConfig& c) {
  FiniteHorizonSpec s;
  s.periods = c.finite.periods;
  s.prior = c.model.prior;
  s.delta = c.model.delta;
  s.prefs = c.model.prefs;
  s.regime = c.model.regime;
  s.theta_grid_size = c.finite.theta_grid_size;
  s.representation = c.finite.representation;
  s.retain_values = false;
  return s;
}

LatticeSpec lattice_spec(const RunConfig& c) {
  LatticeSpec s;
  s.prior = c.model.prior;
  s.max_depth = c.stationary.max_depth;
  s.theta_grid_size = c.stationary.theta_grid_size;
  s.delta = c.model.delta;
  s.prefs = c.model.prefs;
  s.regime = c.model.regime;
  s.tolerance = c.stationary.tolerance;
  s.max_sweeps = c.stationary.max_sweeps;
  s.threads = c.threads;
  return s;
}

GridProblem grid_problem(const RunConfig& c) {
  GridProblem g;
  g.prior = BeliefVector::discretized_beta(c.model.prior, c.grid.points);
  g.signal = {c.grid.phi, c.grid.zbar};
  g.delta = c.model.delta;
  g.prefs = c.model.prefs;
  g.regime = c.model.regime;
  g.periods = c.grid.periods;
  g.node_budget = c.grid.node_budget;
  g.threads = c.threads;
  return g;
}

SimSpec sim_spec(const RunConfig& c) {
  SimSpec s;
  s.n_paths = c.simulate.n_paths;
  s.horizon = c.simulate.horizon;
  s.seed = c.simulate.seed;
  s.theta = c.simulate.theta;
  s.threads = c.threads;
  return s;
}

json to_json(const PolicyTable& t) {
  const auto& h = t.header();
  json layers = json::array();
  for (const auto& layer : t.layers()) {
    json l = json::array();
    for (const auto& cw : layer) l.push_back({cw.cutoff, cw.wage});
    layers.push_back(std::move(l));
  }
  return {{"kind", h.kind == HorizonKind::finite ? "finite" : "stationary"},
          {"prior", {{"alpha", h.prior.alpha()}, {"beta", h.prior.beta()}}},
          {"regime", to_string(h.regime)},
          {"utility", to_json(h.prefs)},
          {"delta", h.delta},
          {"extent", h.extent},
          {"converged", h.converged},
          {"residual", h.residual},
          {"layers", std::move(layers)}};
}

PolicyTable policy_from_json(const json& j) {
  ObjectReader r(j, "policy");
  std::string kind;
  r.string("kind", kind);
  require(kind == "finite" || kind == "stationary", "policy.kind",
          "expected \"finite\" or \"stationary\"");
  const json* prior = r.find("prior");
  require(prior != nullptr, "policy.prior", "required");
  ObjectReader pr(*prior, "policy.prior");
  double a = 0.0;
  double b = 0.0;
  pr.number("alpha", a);
  pr.number("beta", b);
  pr.finish();
  require(a > 0.0 && b > 0.0, "policy.prior", "alpha and beta must be positive");
  std::string regime;
  r.string("regime", regime);
  const auto reg = parse_regime(regime);
  require(reg.has_value(), "policy.regime", "expected \"naive\" or \"sophisticated\"");
  const json* u = r.find("utility");
  require(u != nullptr, "policy.utility", "required");
  const Preferences prefs = preferences_from_json(*u, "policy.utility");
  double delta = 0.0;
  r.number("delta", delta);
  require(delta > 0.0 && delta < 1.0, "policy.delta", "must be in (0, 1)");
  int extent = -1;
  r.integer("extent", extent);
  require(extent >= 0, "policy.extent", "required and non-negative");
  bool converged = true;
  if (const json* cv = r.find("converged")) {
    require(cv->is_boolean(), "policy.converged", "expected a boolean");
    converged = cv->get<bool>();
  }
  double residual = 0.0;
  r.number("residual", residual);
  const json* layers = r.find("layers");
  require(layers != nullptr && layers->is_array(), "policy.layers", "expected an array");
  r.finish();
  std::vector<std::vector<CutoffWage>> out;
  for (const auto& layer : *layers) {
    require(layer.is_array(), "policy.layers", "expected arrays of [cutoff, wage] pairs");
    std::vector<CutoffWage> l;
    l.reserve(layer.size());
    for (const auto& cw : layer) {
      require(cw.is_array() && cw.size() == 2 && cw[0].is_number() && cw[1].is_number(),
              "policy.layers", "expected arrays of [cutoff, wage] pairs");
      l.push_back({cw[0].get<double>(), cw[1].get<double>()});
    }
    out.push_back(std::move(l));
  }
  PolicyTable::Header h{kind == "finite" ? HorizonKind::finite : HorizonKind::stationary,
                        BetaParams(a, b), *reg, prefs, delta, extent, converged, residual};
  try {
    return PolicyTable(std::move(h), std::move(out));
  } catch (const std::exception& e) {
    throw ConfigError("policy.layers", e.what());
  }
}

PolicyTable load_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("simulate.policy_file", "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("simulate.policy_file", std::string("invalid JSON: ") + e.what());
  }
  return policy_from_json(j);
}

json to_json(const Summary& s) {
  json dates = json::array();
  for (std::size_t t = 0; t < s.dates.size(); ++t) {
    dates.push_back({{"date", t},
                     {"paths", s.dates[t].paths},
                     {"self_employed", s.dates[t].self_employed},
                     {"self_employment_share", s.dates[t].self_employment_share()}});
  }
  json absorption = json::array();
  for (const auto& [t, n] : s.absorption_time) absorption.push_back({{"date", t}, {"paths", n}});
  json hazard = json::array();
  for (std::size_t r = 0; r < s.hazard.size(); ++r) {
    hazard.push_back({{"failure_run", r},
                      {"at_risk", s.hazard[r].at_risk},
                      {"entries", s.hazard[r].entries},
                      {"rate", s.hazard[r].rate()}});
  }
  json wages = json::array();
  for (const auto& [k, cell] : s.wage_by_state) {
    wages.push_back(
        {{"alpha", k.first}, {"beta", k.second}, {"mean_wage", cell.mean()}, {"periods", cell.count}});
  }
  json gaps = json::array();
  for (std::size_t t = 1; t < s.offer_gap.size(); ++t) {
    const auto& g = s.offer_gap[t];
    if (!g.defined()) continue;
    gaps.push_back({{"date", t},
                    {"after_success", g.after_success.mean()},
                    {"after_failure", g.after_failure.mean()},
                    {"gap", g.gap()}});
  }
  return {{"paths", s.paths},
          {"self_employment_share", std::move(dates)},
          {"absorption_time", std::move(absorption)},
          {"never_employed", s.never_employed},
          {"employment_exits", s.employment_exits},
          {"hazard_by_failure_run", std::move(hazard)},
          {"wage_by_state", std::move(wages)},
          {"offer_gap", std::move(gaps)}};
}

json to_json(const GridPolicy& g) {
  json dates = json::array();
  for (int t = 0; t < g.periods(); ++t) {
    json nodes = json::array();
    for (const auto& n : g.nodes(t)) {
      nodes.push_back({{"successes", n.key.successes},
                       {"failures", n.key.failures},
                       {"signal_ones", n.key.signal_ones},
                       {"signal_zeros", n.key.signal_zeros},
                       {"belief_mean", n.belief_mean},
                       {"cutoff", n.policy.cutoff},
                       {"wage", n.policy.wage},
                       {"employment_mass", n.employment_mass}});
    }
    dates.push_back({{"date", t}, {"nodes", std::move(nodes)}});
  }
  return {{"dates", std::move(dates)}};
}

json to_json(std::span<const Trajectory> trajs) {
  json out = json::array();
  for (const auto& tr : trajs) {
    json periods = json::array();
    for (const auto& r : tr.periods) {
      periods.push_back(
          {{"date", r.date},
           {"alpha", r.state.alpha()},
           {"beta", r.state.beta()},
           {"action", to_string(r.action)},
           {"outcome", r.outcome ? json(*r.outcome == Outcome::success ? 1 : 0) : json(nullptr)},
           {"wage", r.wage ? json(*r.wage) : json(nullptr)},
           {"offer", r.offer},
           {"utility", r.utility}});
    }
    out.push_back({{"path", tr.path}, {"theta", tr.theta}, {"periods", std::move(periods)}});
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_provenance(std::ostream& os, const Provenance& p) {
  os << "# config_hash=" << p.config_hash;
  if (p.seed) os << " seed=" << *p.seed;
  os << '\n';
}

void write_policy_csv(std::ostream& os, const PolicyTable& t, const Provenance& p) {
  write_provenance(os, p);
  const Lattice lattice(t.prior(), 0);
  const std::string regime(to_string(t.regime()));
  if (t.kind() == HorizonKind::finite) {
    os << "date,alpha,beta,regime,cutoff,wage\n";
    for (std::size_t d = 0; d < t.layers().size(); ++d) {
      const auto& layer = t.layers()[d];
      for (std::size_t i = 0; i < layer.size(); ++i) {
        const BetaParams s = lattice.state(i);
        os << d << ',' << format_double(s.alpha()) << ',' << format_double(s.beta()) << ','
           << regime << ',' << format_double(layer[i].cutoff) << ','
           << format_double(layer[i].wage) << '\n';
      }
    }
    return;
  }
  os << "alpha,beta,regime,cutoff,wage,absorbing_mass\n";
  const auto& layer = t.layers().front();
  for (std::size_t i = 0; i < layer.size(); ++i) {
    const BetaParams s = lattice.state(i);
    os << format_double(s.alpha()) << ',' << format_double(s.beta()) << ',' << regime << ','
       << format_double(layer[i].cutoff) << ',' << format_double(layer[i].wage) << ','
       << format_double(beta_cdf(s, layer[i].cutoff)) << '\n';
  }
}

void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajs,
                            const Provenance& p) {
  write_provenance(os, p);
  os << "path,date,alpha,beta,action,outcome,wage,utility\n";
  for (const auto& tr : trajs) {
    for (const auto& r : tr.periods) {
      os << tr.path << ',' << r.date << ',' << format_double(r.state.alpha()) << ','
         << format_double(r.state.beta()) << ',' << to_string(r.action) << ',';
      if (r.outcome) os << (*r.outcome == Outcome::success ? "success" : "failure");
      os << ',';
      if (r.wage) os << format_double(*r.wage);
      os << ',' << format_double(r.utility) << '\n';
    }
  }
}

void write_hazard_csv(std::ostream& os, const Summary& s, const Provenance& p) {
  write_provenance(os, p);
  os << "failure_run,at_risk,entries,rate\n";
  for (std::size_t r = 0; r < s.hazard.size(); ++r) {
    os << r << ',' << s.hazard[r].at_risk << ',' << s.hazard[r].entries << ','
       << format_double(s.hazard[r].rate()) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const GridPolicy& g, Regime regime, const Provenance& p) {
  write_provenance(os, p);
  os << "date,successes,failures,signal_ones,signal_zeros,regime,belief_mean,cutoff,wage,"
        "employment_mass\n";
  for (int t = 0; t < g.periods(); ++t) {
    for (const auto& n : g.nodes(t)) {
      os << t << ',' << n.key.successes << ',' << n.key.failures << ',' << n.key.signal_ones << ','
         << n.key.signal_zeros << ',' << to_string(regime) << ',' << format_double(n.belief_mean)
         << ',' << format_double(n.policy.cutoff) << ',' << format_double(n.policy.wage) << ','
         << format_double(n.employment_mass) << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& os, SweepParameter parameter, std::span<const SweepPoint> points,
                     const Provenance& p) {
  write_provenance(os, p);
  os << to_string(parameter) << ",alpha,beta,regime,cutoff,wage\n";
  for (const auto& point : points) {
    if (!point.table) continue;
    const auto& t = *point.table;
    const Lattice lattice(t.prior(), 0);
    const auto& layer = t.layers().front();
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const BetaParams s = lattice.state(i);
      os << format_double(point.value) << ',' << format_double(s.alpha()) << ','
         << format_double(s.beta()) << ',' << to_string(t.regime()) << ','
         << format_double(layer[i].cutoff) << ',' << format_double(layer[i].wage) << '\n';
    }
  }
}

}  // namespace careers::io
