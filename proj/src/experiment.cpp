#include "qrc/experiment.hpp"

#include "qrc/parallel.hpp"
#include "qrc/readouts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace qrc::cli {

using nlohmann::json;
using nlohmann::ordered_json;

// Schema ------------------------------------------------------------------------------

namespace {

std::string join_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

// One JSON object of the config with its allowed keys. Null values count as
// absent so optional fields can be spelled out explicitly.
class Section {
 public:
  Section(const json* node, std::string path, std::initializer_list<const char*> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_) return;
    if (!node_->is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& item : node_->items()) {
      if (!keys.count(item.key())) throw ConfigError(join_path(path_, item.key()), "unknown key");
    }
  }

  [[nodiscard]] const json* get(const char* key) const {
    if (!node_) return nullptr;
    const auto it = node_->find(key);
    return it == node_->end() || it->is_null() ? nullptr : &*it;
  }
  [[nodiscard]] std::string at(const char* key) const { return join_path(path_, key); }
  [[nodiscard]] Section child(const char* key, std::initializer_list<const char*> allowed) const {
    return Section(get(key), at(key), allowed);
  }

  using Check = std::function<bool(double)>;

  [[nodiscard]] std::optional<double> optional_number(const char* key, const Check& ok = {}, const char* req = "") const {
    const json* v = get(key);
    if (!v) return std::nullopt;
    return checked_number(*v, at(key), ok, req);
  }
  [[nodiscard]] double number(const char* key, double fallback, const Check& ok = {}, const char* req = "") const {
    return optional_number(key, ok, req).value_or(fallback);
  }
  [[nodiscard]] long long integer(const char* key, long long fallback, long long lo, long long hi) const {
    const json* v = get(key);
    if (!v) return fallback;
    return checked_integer(*v, at(key), lo, hi);
  }
  [[nodiscard]] std::uint64_t seed(const char* key, std::uint64_t fallback) const {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<long long>() < 0)) {
      throw ConfigError(at(key), "expected a non-negative integer seed");
    }
    return v->get<std::uint64_t>();
  }
  [[nodiscard]] bool boolean(const char* key, bool fallback) const {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected a boolean");
    return v->get<bool>();
  }
  [[nodiscard]] std::string choice(const char* key, const std::string& fallback,
                                   std::initializer_list<const char*> options) const {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    const auto s = v->get<std::string>();
    std::string listing;
    for (const char* o : options) {
      if (s == o) return s;
      listing += listing.empty() ? o : std::string(", ") + o;
    }
    throw ConfigError(at(key), "must be one of " + listing + " (got '" + s + "')");
  }
  [[nodiscard]] std::vector<double> numbers(const char* key, std::vector<double> fallback, const Check& ok = {},
                                            const char* req = "") const {
    const json* v = get(key);
    if (!v) return fallback;
    const auto& arr = nonempty_array(*v, at(key));
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(checked_number(arr[i], at(key) + "[" + std::to_string(i) + "]", ok, req));
    }
    return out;
  }
  [[nodiscard]] std::vector<int> integers(const char* key, std::vector<int> fallback, long long lo, long long hi) const {
    const json* v = get(key);
    if (!v) return fallback;
    const auto& arr = nonempty_array(*v, at(key));
    std::vector<int> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(static_cast<int>(checked_integer(arr[i], at(key) + "[" + std::to_string(i) + "]", lo, hi)));
    }
    return out;
  }
  [[nodiscard]] std::vector<std::string> strings(const char* key, std::vector<std::string> fallback) const {
    const json* v = get(key);
    if (!v) return fallback;
    const auto& arr = nonempty_array(*v, at(key));
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back(arr[i].get<std::string>());
    }
    return out;
  }

 private:
  static const json& nonempty_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected an array");
    if (v.empty()) throw ConfigError(path, "must not be empty");
    return v;
  }
  static double checked_number(const json& v, const std::string& path, const Check& ok, const char* req) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    if (ok && !ok(x)) throw ConfigError(path, std::string("must be ") + req);
    return x;
  }
  static long long checked_integer(const json& v, const std::string& path, long long lo, long long hi) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
      throw ConfigError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return x;
  }

  const json* node_;
  std::string path_;
};

bool positive(double x) { return x > 0.0; }
bool open_unit(double x) { return x > 0.0 && x < 1.0; }

bool valid_sigma_name(const std::string& s) {
  if (s == "maximally_mixed" || s == "zero" || s == "one") return true;
  if (s.rfind("random:", 0) != 0 || s.size() == 7) return false;
  return std::all_of(s.begin() + 7, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

constexpr long long kIntMax = 1'000'000'000;

}  // namespace

ExperimentConfig parse_config(const json& config) {
  ExperimentConfig cfg;
  const Section root(&config, "", {"channel", "readout", "process", "loss", "run", "sweep", "verify", "output"});

  const Section ch = root.child("channel", {"variant", "n", "theta_size", "ptr", "rrr"});
  auto& c = cfg.channel;
  c.variant = ch.choice("variant", c.variant, {"ptr", "rrr"});
  c.n = static_cast<int>(ch.integer("n", c.n, 1, 12));
  if (ch.get("theta_size")) c.theta_size = static_cast<std::size_t>(ch.integer("theta_size", 1, 1, kIntMax));

  const Section ptr = ch.child("ptr", {"epsilon", "coupling_draws", "coupling_seed", "gammas", "taus"});
  const double s = ptr_epsilon_limit();
  c.epsilon_ptr = ptr.number("epsilon", c.epsilon_ptr, [s](double e) { return e > 0.0 && e < s; },
                             "in (0, sqrt(sqrt2 - 1))");
  c.coupling_draws = static_cast<int>(ptr.integer("coupling_draws", c.coupling_draws, 1, 10000));
  c.coupling_seed = ptr.seed("coupling_seed", c.coupling_seed);
  c.gammas = ptr.numbers("gammas", c.gammas);
  c.taus = ptr.numbers("taus", c.taus, [](double t) { return t >= 0.0; }, ">= 0");

  const Section rrr = ch.child("rrr", {"alphas", "r0", "r1", "epsilon", "sigmas", "unitary_seed", "fault_base_r"});
  c.alphas = rrr.numbers("alphas", c.alphas, open_unit, "in (0, 1)");
  c.r0 = rrr.number("r0", c.r0, open_unit, "in (0, 1)");
  c.r1 = rrr.number("r1", c.r1, open_unit, "in (0, 1)");
  if (!(c.r0 + c.r1 < 1.0)) throw ConfigError(rrr.at("r1"), "r0 + r1 must be < 1");
  if (c.r0 < c.r1) throw ConfigError(rrr.at("r0"), "must be >= r1");
  c.epsilon_rrr = rrr.number("epsilon", c.epsilon_rrr, [](double e) { return e > 0.0 && e < 0.25; }, "in (0, 1/4)");
  c.sigmas = rrr.strings("sigmas", c.sigmas);
  for (std::size_t i = 0; i < c.sigmas.size(); ++i) {
    if (!valid_sigma_name(c.sigmas[i])) {
      throw ConfigError(rrr.at("sigmas") + "[" + std::to_string(i) + "]",
                        "must be maximally_mixed, zero, one or random:<seed>");
    }
  }
  c.unitary_seed = rrr.seed("unitary_seed", c.unitary_seed);
  c.fault_base_r = rrr.optional_number("fault_base_r");

  const Section ro = root.child("readout", {"kind", "r_max", "c_max", "ell", "ell_max"});
  auto& r = cfg.readout;
  r.kind = ro.choice("kind", r.kind, {"poly", "lin", "sm"});
  r.r_max = static_cast<int>(ro.integer("r_max", r.r_max, 1, 16));
  r.c_max = ro.number("c_max", r.c_max, [](double x) { return x >= 0.0; }, ">= 0");
  r.ell = static_cast<int>(ro.integer("ell", r.ell, 1, 12));
  r.ell_max = static_cast<int>(ro.integer("ell_max", std::max(r.ell_max, r.ell), 1, 12));
  if (r.ell > r.ell_max) throw ConfigError(ro.at("ell"), "must be <= ell_max");
  if (r.kind == "sm" && c.n % r.ell != 0) throw ConfigError(ro.at("ell"), "must divide channel.n");

  const Section pr = root.child("process", {"lambda_v", "lambda_y", "m_xi", "delay", "v_scale", "v_shift", "y_scale",
                                            "independent_target", "truncation"});
  auto& p = cfg.process;
  p.lambda_v = pr.number("lambda_v", p.lambda_v, open_unit, "in (0, 1)");
  p.lambda_y = pr.number("lambda_y", p.lambda_y, open_unit, "in (0, 1)");
  p.m_xi = pr.number("m_xi", p.m_xi, positive, "> 0");
  p.delay = static_cast<int>(pr.integer("delay", p.delay, 0, 10000));
  p.v_scale = pr.optional_number("v_scale");
  p.v_shift = pr.optional_number("v_shift");
  p.y_scale = pr.number("y_scale", p.y_scale);
  p.independent_target = pr.boolean("independent_target", p.independent_target);
  p.truncation = static_cast<int>(pr.integer("truncation", p.truncation, 0, 1'000'000));
  if (p.truncation != 0 &&
      p.truncation < std::max(minimum_truncation(p.lambda_v), minimum_truncation(p.lambda_y))) {
    throw ConfigError(pr.at("truncation"), "shorter than the 1e-12 cutoff of the filters");
  }

  const Section lo = root.child("loss", {"kind", "delta"});
  const auto loss_kind = lo.choice("kind", "absolute", {"absolute", "huber"});
  const double huber_delta = lo.number("delta", 1.0, positive, "> 0");
  cfg.loss = loss_kind == "huber" ? LossFunction::huber(huber_delta) : LossFunction::absolute();

  const Section ru = root.child("run", {"m", "k", "ks", "mc_reps", "delta", "washout_tol", "seed", "n_mc",
                                        "e_loss_samples", "e_loss_zero", "c4_scope", "verbatim_lin_r_max", "log_base"});
  auto& run = cfg.run;
  run.m = static_cast<std::size_t>(ru.integer("m", static_cast<long long>(run.m), 1, kIntMax));
  run.k = static_cast<int>(ru.integer("k", run.k, 2, kIntMax));
  run.ks = ru.integers("ks", run.ks, 2, kIntMax);
  run.mc_reps = static_cast<int>(ru.integer("mc_reps", run.mc_reps, 1, kIntMax));
  run.delta = ru.number("delta", run.delta, open_unit, "in (0, 1)");
  run.washout_tol = ru.number("washout_tol", run.washout_tol, positive, "> 0");
  run.seed = ru.seed("seed", run.seed);
  run.n_mc = static_cast<std::size_t>(ru.integer("n_mc", static_cast<long long>(run.n_mc), 2, kIntMax));
  run.e_loss_samples =
      static_cast<std::size_t>(ru.integer("e_loss_samples", static_cast<long long>(run.e_loss_samples), 2, kIntMax));
  run.e_loss_zero = ru.optional_number("e_loss_zero", [](double x) { return x >= 0.0; }, ">= 0");
  run.c4_scope = ru.choice("c4_scope", "inside", {"inside", "outside"}) == "inside" ? C4Scope::InsideLossFactor
                                                                                     : C4Scope::Outside;
  run.verbatim_lin_r_max = ru.boolean("verbatim_lin_r_max", run.verbatim_lin_r_max);
  run.log_base = parse_log_base(ru.choice("log_base", "e", {"e", "2", "10"}));

  const Section sw = root.child("sweep", {"axis", "values"});
  cfg.sweep.axis = sw.choice("axis", cfg.sweep.axis, {"n", "m", "k", "r_max", "epsilon", "alpha_min"});
  cfg.sweep.values = sw.numbers("values", {});

  const Section ve = root.child("verify", {"pairs", "inputs", "steps"});
  cfg.verify.pairs = static_cast<int>(ve.integer("pairs", cfg.verify.pairs, 1, kIntMax));
  cfg.verify.inputs = static_cast<int>(ve.integer("inputs", cfg.verify.inputs, 1, kIntMax));
  cfg.verify.steps = static_cast<int>(ve.integer("steps", cfg.verify.steps, 1, kIntMax));

  const Section out = root.child("output", {"dir", "formats"});
  if (const json* d = out.get("dir")) {
    if (!d->is_string() || d->get<std::string>().empty()) throw ConfigError(out.at("dir"), "expected a non-empty path");
    cfg.output.dir = d->get<std::string>();
  }
  cfg.output.formats = out.strings("formats", cfg.output.formats);
  for (std::size_t i = 0; i < cfg.output.formats.size(); ++i) {
    const auto& f = cfg.output.formats[i];
    if (f != "json" && f != "csv") throw ConfigError(out.at("formats") + "[" + std::to_string(i) + "]", "must be json or csv");
  }
  return cfg;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const json& config) {
  // nlohmann::json stores objects in std::map, so dump() is key-sorted.
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(config.dump());
  return out.str();
}

// Experiment ----------------------------------------------------------------------------

namespace {

DensityMatrix named_state(const std::string& name, int n) {
  if (name == "maximally_mixed") return DensityMatrix::maximally_mixed(n);
  if (name == "zero") return DensityMatrix::basis_state(n, 0);
  if (name == "one") return DensityMatrix::basis_state(n, (Eigen::Index{1} << n) - 1);
  return DensityMatrix::random(n, std::stoull(name.substr(7)));
}

template <class T>
std::size_t distinct(const std::vector<T>& values) {
  return std::set<T>(values.begin(), values.end()).size();
}

}  // namespace

Experiment make_experiment(const ExperimentConfig& config) {
  Experiment e{config, {}, {}, {}, {}, 1, 0.0};
  const auto& c = config.channel;
  e.alpha_min = *std::min_element(c.alphas.begin(), c.alphas.end());
  if (c.variant == "ptr") {
    e.domain = ptr_input_domain(c.epsilon_ptr);
    e.constants = ptr_constants(c.epsilon_ptr);
    e.theta_size = static_cast<std::size_t>(c.coupling_draws) * distinct(c.gammas) * distinct(c.taus);
  } else {
    e.domain = rrr_input_domain(c.epsilon_rrr);
    e.constants = rrr_constants(e.alpha_min, c.r0, c.r1, c.epsilon_rrr);
    e.theta_size = distinct(c.alphas) * distinct(c.sigmas);
  }
  if (c.theta_size) e.theta_size = *c.theta_size;

  const auto& p = config.process;
  ProcessSpec& spec = e.process;
  spec.lambda_v = p.lambda_v;
  spec.lambda_y = p.lambda_y;
  spec.m_xi = p.m_xi;
  spec.delay = p.delay;
  spec.v_lo = e.domain.lo;
  spec.v_hi = e.domain.hi;
  // With these defaults |v_scale * sum_j lambda^j xi_j| <= half the domain width.
  spec.v_shift = p.v_shift.value_or(0.5 * (e.domain.lo + e.domain.hi));
  spec.v_scale = p.v_scale.value_or(0.5 * e.domain.width() * (1.0 - p.lambda_v) / p.m_xi);
  spec.y_scale = p.y_scale;
  spec.independent_target = p.independent_target;
  spec.truncation = p.truncation;
  e.process_constants = process_constants(spec);
  return e;
}

std::vector<ReservoirMapPtr> Experiment::channels() const {
  const auto& c = config.channel;
  if (c.variant == "ptr") {
    return instantiate(parameter_grid(PtrGridSpec{c.n, c.coupling_draws, c.coupling_seed, c.gammas, c.taus}));
  }
  const Eigen::Index d = Eigen::Index{1} << c.n;
  const DensityMatrix zero = DensityMatrix::basis_state(c.n, 0);
  ComplexMatrix u0 = random_unitary(d, derive_seed(c.unitary_seed, 0));
  BaseChannel t0 = c.fault_base_r ? BaseChannel::unchecked(*c.fault_base_r, std::move(u0), zero)
                                  : make_base_channel(c.r0, std::move(u0), zero);
  BaseChannel t1 = make_base_channel(c.r1, random_unitary(d, derive_seed(c.unitary_seed, 1)),
                                     DensityMatrix::basis_state(c.n, d - 1));
  std::vector<DensityMatrix> sigmas;
  for (const auto& name : c.sigmas) sigmas.push_back(named_state(name, c.n));
  const auto grid = parameter_grid(RrrGridSpec{c.alphas, std::move(sigmas), std::move(t0), std::move(t1)});
  return instantiate(grid, !c.fault_base_r.has_value());
}

ReadoutSpace Experiment::readout_space() const {
  const auto& r = config.readout;
  return {config.channel.n, r.kind == "lin" ? 1 : r.r_max, r.c_max};
}

double Experiment::l_h_bar() const {
  const auto& r = config.readout;
  if (r.kind == "sm") return lipschitz_bound_sm(config.channel.n, r.ell_max);
  return lipschitz_bound_poly(config.channel.n, readout_space().r_max);
}

BoundInputs bound_inputs(const Experiment& e, double e_loss_zero) {
  const auto& cfg = e.config;
  BoundInputs in;
  in.n = cfg.channel.n;
  in.r_max = e.readout_space().r_max;
  in.c_max = cfg.readout.c_max;
  in.theta_size = e.theta_size;
  in.m = cfg.run.m;
  in.delta = cfg.run.delta;
  in.l_ell = cfg.loss.lipschitz();
  in.e_loss_zero = e_loss_zero;
  in.process = e.process_constants;
  in.r = e.constants.r;
  in.l_r = e.constants.l_r;
  in.l_h_bar = e.l_h_bar();
  in.l_h0 = cfg.readout.c_max;
  in.epsilon_ptr = cfg.channel.epsilon_ptr;
  in.alpha_min = e.alpha_min;
  in.r0 = cfg.channel.r0;
  in.r1 = cfg.channel.r1;
  in.epsilon_rrr = cfg.channel.epsilon_rrr;
  in.log_base = cfg.run.log_base;
  return in;
}

BoundReport primary_bound(const Experiment& e, const BoundInputs& in) {
  if (e.config.readout.kind == "sm") {
    const double c_qrc = static_cast<double>(in.theta_size) * in.n + in.c_max;
    return risk_bound_general(in, theorem14_constants(in, c_qrc), in.m, in.delta);
  }
  if (e.config.channel.variant == "ptr") return risk_bound_ptr(in);
  return risk_bound_rrr(in, e.config.run.c4_scope);
}

// Sweep -----------------------------------------------------------------------------------

std::vector<SweepRow> sweep_table(const Experiment& base, double e_loss_zero) {
  const auto& sweep = base.config.sweep;
  if (sweep.values.empty()) throw ConfigError("sweep.values", "must not be empty");
  const bool ptr = base.config.channel.variant == "ptr";
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    const double v = sweep.values[i];
    const std::string where = "sweep.values[" + std::to_string(i) + "]";
    const bool integral = sweep.axis == "n" || sweep.axis == "m" || sweep.axis == "k" || sweep.axis == "r_max";
    if (integral && (v != std::floor(v) || v < 1.0 || v > 1e9)) throw ConfigError(where, "expected a positive integer");

    ExperimentConfig cfg = base.config;
    int k = cfg.run.k;
    std::optional<double> alpha_override;
    if (sweep.axis == "n") {
      if (v > 12) throw ConfigError(where, "n must be <= 12");
      cfg.channel.n = static_cast<int>(v);
    } else if (sweep.axis == "m") {
      cfg.run.m = static_cast<std::size_t>(v);
    } else if (sweep.axis == "k") {
      if (v < 2) throw ConfigError(where, "k must be >= 2");
      k = static_cast<int>(v);
    } else if (sweep.axis == "r_max") {
      if (v > 16) throw ConfigError(where, "r_max must be <= 16");
      cfg.readout.r_max = static_cast<int>(v);
    } else if (sweep.axis == "epsilon") {
      if (ptr) {
        if (!(v > 0.0 && v < ptr_epsilon_limit())) throw ConfigError(where, "must lie in (0, sqrt(sqrt2 - 1))");
        cfg.channel.epsilon_ptr = v;
      } else {
        if (!(v > 0.0 && v < 0.25)) throw ConfigError(where, "must lie in (0, 1/4)");
        cfg.channel.epsilon_rrr = v;
      }
    } else {
      if (ptr) throw ConfigError("sweep.axis", "alpha_min requires channel.variant = rrr");
      if (!(v > 0.0 && v < 1.0)) throw ConfigError(where, "must lie in (0, 1)");
      alpha_override = v;
    }
    if (cfg.readout.kind == "sm" && cfg.channel.n % cfg.readout.ell != 0) {
      throw ConfigError(where, "readout.ell must divide n");
    }

    const Experiment e = make_experiment(cfg);
    BoundInputs in = bound_inputs(e, e_loss_zero);
    if (alpha_override) in.alpha_min = *alpha_override;
    const auto report = primary_bound(e, in);

    SweepRow row;
    row.value = v;
    row.n = in.n;
    row.m = in.m;
    row.k = k;
    row.r_max = in.r_max;
    row.epsilon = ptr ? in.epsilon_ptr : in.epsilon_rrr;
    row.alpha_min = in.alpha_min;
    row.theta_size = in.theta_size;
    row.l_h_bar_poly = lipschitz_bound_poly(in.n, in.r_max);
    row.l_h_bar_sm = lipschitz_bound_sm(in.n, cfg.readout.ell_max);
    row.rademacher_poly = rademacher_bound_poly(in.theta_size, in.n, in.r_max, in.c_max, k);
    row.rademacher_lin = rademacher_bound_lin(in.theta_size, in.c_max, k,
                                              cfg.run.verbatim_lin_r_max ? std::optional<int>(cfg.readout.r_max)
                                                                         : std::nullopt);
    row.rademacher_sm = rademacher_bound_sm(in.theta_size, in.n, in.c_max, k);
    row.valid = report.valid;
    row.bound_total = report.total;
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "value,n,m,k,r_max,epsilon,alpha_min,theta_size,l_h_bar_poly,l_h_bar_sm,rademacher_poly,rademacher_lin,"
         "rademacher_sm,valid,bound_total\n";
  for (const auto& r : rows) {
    out << fmt(r.value) << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.r_max << ',' << fmt(r.epsilon) << ','
        << fmt(r.alpha_min) << ',' << r.theta_size << ',' << fmt(r.l_h_bar_poly) << ',' << fmt(r.l_h_bar_sm) << ','
        << fmt(r.rademacher_poly) << ',' << fmt(r.rademacher_lin) << ',' << fmt(r.rademacher_sm) << ','
        << (r.valid ? "true" : "false") << ',' << (r.bound_total ? fmt(*r.bound_total) : "") << '\n';
  }
  return out.str();
}

// Output --------------------------------------------------------------------------------

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Context {
  Experiment experiment;
  std::string hash;
  std::filesystem::path out_dir;
  bool override_guards = false;
  std::ostream* log = nullptr;

  [[nodiscard]] const ExperimentConfig& cfg() const { return experiment.config; }
  [[nodiscard]] bool wants(const char* format) const {
    const auto& f = cfg().output.formats;
    return std::find(f.begin(), f.end(), format) != f.end();
  }
};

ordered_json report_header(const Context& ctx, const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config_hash"] = ctx.hash;
  j["seed"] = ctx.cfg().run.seed;
  return j;
}

void emit(const Context& ctx, const std::string& name, ordered_json report, const std::string& csv) {
  report["timestamp"] = utc_timestamp();
  if (ctx.wants("json")) write_file_atomic(ctx.out_dir / (name + ".json"), report.dump(2) + "\n");
  if (ctx.wants("csv") && !csv.empty()) write_file_atomic(ctx.out_dir / (name + ".csv"), csv);
  *ctx.log << "wrote " << (ctx.out_dir / name).string() << ".{" << (ctx.wants("json") ? "json" : "")
           << (ctx.wants("json") && ctx.wants("csv") && !csv.empty() ? "," : "")
           << (ctx.wants("csv") && !csv.empty() ? "csv" : "") << "}\n";
}

ordered_json channel_json(const Experiment& e) {
  ordered_json j;
  const bool ptr = e.config.channel.variant == "ptr";
  j["variant"] = e.config.channel.variant;
  j["n"] = e.config.channel.n;
  j[ptr ? "r_ptr" : "r_rrr"] = e.constants.r;
  j["l_r"] = e.constants.l_r;
  j[ptr ? "epsilon_ptr" : "epsilon_rrr"] = e.domain.epsilon;
  j["d_v"] = {e.domain.lo, e.domain.hi};
  j["theta_size"] = e.theta_size;
  if (!ptr) j["alpha_min"] = e.alpha_min;
  return j;
}

ordered_json process_json(const Experiment& e) {
  const auto& p = e.process_constants;
  return {{"v_scale", e.process.v_scale}, {"v_shift", e.process.v_shift}, {"l_v", p.l_v}, {"l_y", p.l_y},
          {"d_wv", p.d_wv}, {"d_wy", p.d_wy}, {"c_v", p.c_v}, {"c_y", p.c_y}, {"w1_v", p.w1_v}, {"w1_y", p.w1_y},
          {"e_xi", p.e_xi}, {"m_xi", p.m_xi}, {"truncation", e.process.effective_truncation()}};
}

McEstimate loss_at_zero(const Context& ctx, ordered_json& provenance) {
  const auto& run = ctx.cfg().run;
  if (run.e_loss_zero) {
    provenance = {{"estimate", *run.e_loss_zero}, {"std_err", 0.0}, {"source", "config"}};
    return {*run.e_loss_zero, 0.0, 0};
  }
  const auto est = estimate_loss_at_zero(ctx.experiment.process, ctx.cfg().loss, run.e_loss_samples,
                                         derive_seed(run.seed, 3));
  provenance = {{"estimate", est.estimate}, {"std_err", est.std_err}, {"samples", est.samples}, {"source", "monte_carlo"}};
  return est;
}

std::string bound_csv(const BoundReport& r) {
  std::ostringstream out;
  out << "variant,m,delta,log_base,zeta_max,r,l_h_bar,c_0,c_1,c_2,c_3,c_4,term_0,term_1,term_2,term_3,valid,total\n";
  out << to_string(r.variant) << ',' << r.m << ',' << fmt(r.delta) << ',' << to_string(r.log_base) << ','
      << fmt(r.zeta_max) << ',' << fmt(r.r) << ',' << fmt(r.l_h_bar) << ',' << fmt(r.c_0) << ',' << fmt(r.c_1) << ','
      << fmt(r.c_2) << ',' << fmt(r.c_3) << ',' << fmt(r.c_bd);
  for (double t : r.terms) out << ',' << fmt(t);
  out << ',' << (r.valid ? "true" : "false") << ',' << (r.total ? fmt(*r.total) : "") << '\n';
  return out.str();
}

// bound --------------------------------------------------------------------------------------

int cmd_bound(const Context& ctx) {
  const Experiment& e = ctx.experiment;
  ordered_json report = report_header(ctx, "bound");
  ordered_json e_loss;
  const auto loss0 = loss_at_zero(ctx, e_loss);
  const BoundInputs in = bound_inputs(e, loss0.estimate);
  const BoundReport primary = primary_bound(e, in);

  report["channel"] = channel_json(e);
  report["process"] = process_json(e);
  report["e_loss_zero"] = e_loss;
  report["l_ell"] = in.l_ell;
  report["l_h_bar"] = e.l_h_bar();

  const auto& ro = e.config.readout;
  ordered_json rad;
  rad["k"] = e.config.run.k;
  if (ro.kind == "sm") {
    rad["c_qrc"] = static_cast<double>(in.theta_size) * in.n + in.c_max;
    rad["rademacher_sm"] = rademacher_bound_sm(in.theta_size, in.n, in.c_max, e.config.run.k);
  } else {
    rad["c_qrc"] = c_qrc_poly(in.theta_size, in.n, in.r_max, in.c_max);
    rad["rademacher_poly"] = rademacher_bound_poly(in.theta_size, in.n, in.r_max, in.c_max, e.config.run.k);
    if (ro.kind == "lin") {
      rad["rademacher_lin"] = rademacher_bound_lin(
          in.theta_size, in.c_max, e.config.run.k,
          e.config.run.verbatim_lin_r_max ? std::optional<int>(ro.r_max) : std::nullopt);
    }
  }
  report["rademacher"] = rad;
  report["bound"] = json::parse(primary.to_json());

  if (ro.kind != "sm") {
    const bool ptr = e.config.channel.variant == "ptr";
    const BoundInputs general = ptr ? with_ptr_constants(in) : with_rrr_constants(in);
    const auto consts = theorem14_constants(general, c_qrc_poly(in.theta_size, in.n, in.r_max, in.c_max));
    report["bound_general"] = json::parse(risk_bound_general(general, consts, in.m, in.delta).to_json());
    report["big_o"] = json::parse(to_json(ptr ? bigo_params_ptr(in) : bigo_params_rrr(in)));
  }

  emit(ctx, "bound", report, bound_csv(primary));
  if (!primary.valid) {
    *ctx.log << "bound not applicable: log m >= m log(1/zeta_max) for m = " << in.m
             << ", zeta_max = " << primary.zeta_max << "\n";
    return kExitInvalidBound;
  }
  return kExitOk;
}

// verify -------------------------------------------------------------------------------------

struct Check {
  std::string name;
  bool passed = true;
  double measured = 0.0;
  double theoretical = 0.0;
  ordered_json details = ordered_json::object();
};

double uniform_in(std::mt19937_64& rng, const InputDomain& d) {
  return std::uniform_real_distribution<double>(d.lo, d.hi)(rng);
}

PolynomialReadout full_readout(int n, int r_max, double c_max, std::mt19937_64* rng) {
  PolynomialReadout::Weights w;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& mono : enumerate_monomials(n, r_max)) w[mono] = rng ? unit(*rng) : 1.0;
  const double c = rng ? std::uniform_real_distribution<double>(-c_max, c_max)(*rng) : 0.0;
  return PolynomialReadout(n, r_max, r_max, c, c_max, std::move(w));
}

int cmd_verify(const Context& ctx) {
  const Experiment& e = ctx.experiment;
  const auto& cfg = e.config;
  const int n = cfg.channel.n;
  if (n > 4 && !ctx.override_guards) {
    throw ConfigError("channel.n", "verify is limited to n <= 4 (use --override-guards)");
  }
  const auto channels = e.channels();
  const double r = e.constants.r;
  const double l_r = e.constants.l_r;
  const double l_h = e.l_h_bar();
  const auto seed = cfg.run.seed;
  const int pairs = cfg.verify.pairs;
  const int inputs = cfg.verify.inputs;
  std::vector<Check> checks;

  {  // CPTP certificate per grid point and input.
    Check c{"cptp", true, 0.0, 0.0};
    double worst_trace = 0.0;
    double worst_eig = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(derive_seed(seed, 101));
    for (const auto& ch : channels) {
      for (int i = 0; i < inputs; ++i) {
        const auto rep = verify_cptp(ch->superoperator(uniform_in(rng, e.domain)));
        worst_trace = std::max(worst_trace, rep.trace_dev);
        worst_eig = std::min(worst_eig, rep.min_choi_eig);
        c.passed = c.passed && rep.passes();
      }
    }
    c.measured = worst_trace;
    c.details = {{"max_trace_dev", worst_trace}, {"min_choi_eig", worst_eig}, {"trace_tol", 1e-10},
                 {"choi_tol", -kPositivityTol}};
    checks.push_back(std::move(c));
  }

  {  // State contraction on random density pairs.
    Check c{"contraction", true, 0.0, r};
    std::mt19937_64 rng(derive_seed(seed, 102));
    for (const auto& ch : channels) {
      for (int p = 0; p < pairs; ++p) {
        const auto a = DensityMatrix::random(n, rng());
        const auto b = DensityMatrix::random(n, rng());
        const double d0 = schatten2(a.matrix() - b.matrix());
        for (int i = 0; i < inputs; ++i) {
          const double v = uniform_in(rng, e.domain);
          c.measured = std::max(c.measured, schatten2(ch->apply(v, a.matrix()) - ch->apply(v, b.matrix())) / d0);
        }
      }
    }
    c.passed = c.measured <= r + 1e-9;
    c.details = {{"pairs_per_channel", pairs}, {"inputs_per_pair", inputs}};
    checks.push_back(std::move(c));
  }

  {  // Exact worst case over traceless Hermitian directions.
    Check c{"contraction_restricted_norm", true, 0.0, r};
    std::mt19937_64 rng(derive_seed(seed, 103));
    for (const auto& ch : channels) {
      for (int i = 0; i < inputs; ++i) {
        c.measured = std::max(c.measured, traceless_restricted_norm(ch->superoperator(uniform_in(rng, e.domain))));
      }
    }
    c.passed = c.measured <= r + 1e-9;
    checks.push_back(std::move(c));
  }

  {  // Lipschitz in the input.
    Check c{"input_lipschitz", true, 0.0, l_r};
    std::mt19937_64 rng(derive_seed(seed, 104));
    for (const auto& ch : channels) {
      for (int p = 0; p < pairs; ++p) {
        const auto rho = DensityMatrix::random(n, rng());
        const double v = uniform_in(rng, e.domain);
        const double w = uniform_in(rng, e.domain);
        if (v == w) continue;
        const double ratio = schatten2(ch->apply(v, rho.matrix()) - ch->apply(w, rho.matrix())) / std::abs(v - w);
        c.measured = std::max(c.measured, ratio);
      }
    }
    c.passed = c.measured <= l_r + 1e-9;
    checks.push_back(std::move(c));
  }

  {  // Echo-state envelope and washout agreement.
    Check env{"echo_state_envelope", true, 0.0, 1.0};
    Check wash{"washout_agreement", true, 0.0, 1e-8 * l_h};
    const int washout = washout_length(r, cfg.run.washout_tol);
    const int esp_pairs = std::min(pairs, 20);
    const auto readout = full_readout(n, e.readout_space().r_max, cfg.readout.c_max, nullptr);
    std::mt19937_64 rng(derive_seed(seed, 105));
    for (std::size_t t = 0; t < channels.size(); ++t) {
      const auto series = generate_series(e.process, static_cast<std::size_t>(std::max(washout, cfg.verify.steps)),
                                          derive_seed(seed, 200 + t));
      for (int p = 0; p < esp_pairs; ++p) {
        ComplexMatrix a = DensityMatrix::random(n, rng()).matrix();
        ComplexMatrix b = DensityMatrix::random(n, rng()).matrix();
        const double d0 = schatten2(a - b);
        for (int step = 1; step <= std::max(washout, cfg.verify.steps); ++step) {
          const double v = series.v[static_cast<std::size_t>(step - 1)];
          a = channels[t]->apply(v, a);
          b = channels[t]->apply(v, b);
          if (step <= cfg.verify.steps) {
            const double envelope = std::pow(r, step) * d0 * std::pow(1.0 + 1e-9, step) + 1e-12;
            env.measured = std::max(env.measured, schatten2(a - b) / envelope);
          }
          if (step == washout) {
            wash.measured = std::max(wash.measured, std::abs(readout.evaluate(a) - readout.evaluate(b)));
          }
        }
      }
    }
    env.passed = env.measured <= 1.0;
    env.details = {{"steps", cfg.verify.steps}, {"pairs_per_channel", esp_pairs},
                   {"measured_is", "max_t d_t / (r^t d_0 (1 + 1e-9)^t + 1e-12)"}};
    wash.passed = wash.measured < 1e-8 * l_h;
    wash.details = {{"washout_length", washout}, {"washout_tol", cfg.run.washout_tol}};
    checks.push_back(std::move(env));
    checks.push_back(std::move(wash));
  }

  {  // Readout Lipschitz constant over random class members.
    Check c{"readout_lipschitz", true, 0.0, l_h};
    std::mt19937_64 rng(derive_seed(seed, 106));
    const auto& ro = cfg.readout;
    for (int p = 0; p < pairs; ++p) {
      const auto a = DensityMatrix::random(n, rng());
      const auto b = DensityMatrix::random(n, rng());
      double ha = 0.0;
      double hb = 0.0;
      if (ro.kind == "sm") {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<std::vector<double>> w(static_cast<std::size_t>(ro.ell),
                                           std::vector<double>(static_cast<std::size_t>(n / ro.ell)));
        for (auto& block : w) {
          for (double& x : block) x = unit(rng);
        }
        const SpatialMultiplexReadout h(n, ro.ell, ro.ell_max, 0.0, ro.c_max, std::move(w));
        ha = h.evaluate_joint(a.matrix());
        hb = h.evaluate_joint(b.matrix());
      } else {
        const auto h = full_readout(n, e.readout_space().r_max, ro.c_max, &rng);
        ha = h.evaluate(a);
        hb = h.evaluate(b);
      }
      c.measured = std::max(c.measured, std::abs(ha - hb) / schatten2(a.matrix() - b.matrix()));
    }
    c.passed = c.measured <= l_h + 1e-9;
    checks.push_back(std::move(c));
  }

  ordered_json report = report_header(ctx, "verify");
  report["channel"] = channel_json(e);
  bool all = true;
  ordered_json list = ordered_json::array();
  std::ostringstream csv;
  csv << "check,passed,measured,theoretical\n";
  for (const auto& c : checks) {
    all = all && c.passed;
    ordered_json j{{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"theoretical", c.theoretical}};
    if (!c.details.empty()) j["details"] = c.details;
    list.push_back(std::move(j));
    csv << c.name << ',' << (c.passed ? "true" : "false") << ',' << fmt(c.measured) << ',' << fmt(c.theoretical) << '\n';
    *ctx.log << (c.passed ? "PASS " : "FAIL ") << c.name << ": measured " << c.measured << " vs " << c.theoretical
             << "\n";
  }
  report["checks"] = list;
  report["all_passed"] = all;
  emit(ctx, "verify", report, csv.str());
  return all ? kExitOk : kExitCheckFailed;
}

// simulate -----------------------------------------------------------------------------------

int cmd_simulate(const Context& ctx) {
  const Experiment& e = ctx.experiment;
  const auto& cfg = e.config;
  if (cfg.channel.n > 6 && !ctx.override_guards) {
    throw ConfigError("channel.n", "simulate is limited to n <= 6 (use --override-guards)");
  }
  if (cfg.readout.kind == "sm") throw ConfigError("readout.kind", "simulate supports poly and lin readouts");
  const auto seed = cfg.run.seed;
  const auto channels = e.channels();
  const ReadoutSpace space = e.readout_space();
  const auto series = generate_series(e.process, cfg.run.m, derive_seed(seed, 1));
  const auto fit = fit_readout(channels, e.constants.r, series, cfg.run.m, space, {}, cfg.run.washout_tol);
  const ReservoirFunctional h(channels[fit.theta_index], fit.readout, e.constants.r, cfg.run.washout_tol);

  RiskEstimate risk;
  risk.m = cfg.run.m;
  risk.empirical = empirical_risk(h, series, cfg.run.m, cfg.loss);
  risk.generalisation = generalisation_error_mc(h, e.process, cfg.loss, cfg.run.n_mc,
                                                static_cast<std::size_t>(h.washout()), derive_seed(seed, 2));
  risk.gap = std::abs(risk.generalisation.estimate - risk.empirical);

  ordered_json e_loss;
  const auto loss0 = loss_at_zero(ctx, e_loss);
  const BoundInputs in = bound_inputs(e, loss0.estimate);
  const BoundReport bound = primary_bound(e, in);
  const bool dominated = bound.total && risk.gap <= *bound.total;

  ordered_json report = report_header(ctx, "simulate");
  report["channel"] = channel_json(e);
  report["process"] = process_json(e);
  report["fit"] = {{"theta_index", fit.theta_index}, {"iterations", fit.lsq.iterations},
                   {"converged", fit.lsq.converged}, {"degenerate", fit.lsq.degenerate},
                   {"objective", fit.lsq.objective.back()}, {"readout", json::parse(to_json(fit.readout))}};
  report["risk"] = {{"m", risk.m},
                    {"r_hat_m", risk.empirical},
                    {"r_h", risk.generalisation.estimate},
                    {"r_h_std_err", risk.generalisation.std_err},
                    {"n_mc", risk.generalisation.samples},
                    {"gap", risk.gap},
                    {"washout_length", h.washout()},
                    {"truncation_bound", std::pow(e.constants.r, h.washout()) * std::sqrt(2.0) * e.l_h_bar()}};
  report["e_loss_zero"] = e_loss;
  report["bound"] = json::parse(bound.to_json());
  report["dominated"] = dominated;

  std::ostringstream csv;
  csv << "m,r_hat_m,r_h,r_h_std_err,gap,bound,valid,dominated\n";
  csv << risk.m << ',' << fmt(risk.empirical) << ',' << fmt(risk.generalisation.estimate) << ','
      << fmt(risk.generalisation.std_err) << ',' << fmt(risk.gap) << ',' << (bound.total ? fmt(*bound.total) : "")
      << ',' << (bound.valid ? "true" : "false") << ',' << (dominated ? "true" : "false") << '\n';
  emit(ctx, "simulate", report, csv.str());
  if (ctx.wants("csv")) write_file_atomic(ctx.out_dir / "series.csv", to_csv(series));
  *ctx.log << "gap " << risk.gap << " vs bound " << (bound.total ? fmt(*bound.total) : "n/a") << "\n";
  return bound.valid ? kExitOk : kExitInvalidBound;
}

// rademacher ---------------------------------------------------------------------------------

int cmd_rademacher(const Context& ctx) {
  const Experiment& e = ctx.experiment;
  const auto& cfg = e.config;
  if (cfg.readout.kind == "sm") {
    throw ConfigError("readout.kind", "the Monte-Carlo estimator covers poly and lin readouts");
  }
  const auto channels = e.channels();
  const ReadoutSpace space = e.readout_space();
  const std::vector<int> ks = cfg.run.ks.empty() ? std::vector<int>{cfg.run.k} : cfg.run.ks;
  std::vector<RademacherQuery> queries;
  for (int k : ks) queries.push_back({space.r_max, channels.size(), k});
  const auto horizon = static_cast<std::size_t>(washout_length(e.constants.r, cfg.run.washout_tol));
  const auto estimates = rademacher_mc_nested(channels, space.n, space.c_max, e.process, queries, horizon,
                                              cfg.run.mc_reps, derive_seed(cfg.run.seed, 4));

  ordered_json report = report_header(ctx, "rademacher");
  report["channel"] = channel_json(e);
  report["readout"] = {{"kind", cfg.readout.kind}, {"r_max", space.r_max}, {"c_max", space.c_max}};
  report["horizon"] = horizon;
  ordered_json records = ordered_json::array();
  std::ostringstream csv;
  csv << "k,mc_reps,estimate,std_err,bound,dominated\n";
  for (const auto& est : estimates) {
    const double bound =
        cfg.readout.kind == "lin"
            ? rademacher_bound_lin(channels.size(), space.c_max, est.k,
                                   cfg.run.verbatim_lin_r_max ? std::optional<int>(cfg.readout.r_max) : std::nullopt)
            : rademacher_bound_poly(channels.size(), space.n, space.r_max, space.c_max, est.k);
    const bool dominated = est.estimate + 3.0 * est.std_err <= bound;
    records.push_back({{"config_hash", ctx.hash}, {"seed", cfg.run.seed}, {"k", est.k}, {"mc_reps", est.mc_reps},
                       {"estimate", est.estimate}, {"std_err", est.std_err}, {"bound", bound},
                       {"dominated", dominated}});
    csv << est.k << ',' << est.mc_reps << ',' << fmt(est.estimate) << ',' << fmt(est.std_err) << ',' << fmt(bound)
        << ',' << (dominated ? "true" : "false") << '\n';
    *ctx.log << "k = " << est.k << ": estimate " << est.estimate << " +- " << est.std_err << ", bound " << bound
             << "\n";
  }
  report["estimates"] = records;
  emit(ctx, "rademacher", report, csv.str());
  return kExitOk;
}

// sweep ----------------------------------------------------------------------------------------

int cmd_sweep(const Context& ctx) {
  if (ctx.cfg().sweep.values.empty()) throw ConfigError("sweep.values", "required and must not be empty");
  ordered_json e_loss;
  const auto loss0 = loss_at_zero(ctx, e_loss);
  const auto rows = sweep_table(ctx.experiment, loss0.estimate);
  ordered_json report = report_header(ctx, "sweep");
  report["axis"] = ctx.cfg().sweep.axis;
  report["e_loss_zero"] = e_loss;
  ordered_json list = ordered_json::array();
  for (const auto& r : rows) {
    list.push_back({{"value", r.value}, {"n", r.n}, {"m", r.m}, {"k", r.k}, {"r_max", r.r_max},
                    {"epsilon", r.epsilon}, {"alpha_min", r.alpha_min}, {"theta_size", r.theta_size},
                    {"l_h_bar_poly", r.l_h_bar_poly}, {"l_h_bar_sm", r.l_h_bar_sm},
                    {"rademacher_poly", r.rademacher_poly}, {"rademacher_lin", r.rademacher_lin},
                    {"rademacher_sm", r.rademacher_sm}, {"valid", r.valid},
                    {"bound_total", r.bound_total ? ordered_json(*r.bound_total) : ordered_json(nullptr)}});
  }
  report["rows"] = list;
  emit(ctx, "sweep", report, sweep_csv(rows));
  return kExitOk;
}

}  // namespace

int run_command(const std::string& command, json config, const RunOptions& options, std::ostream& log) {
  static const std::set<std::string> commands{"bound", "verify", "simulate", "rademacher", "sweep"};
  if (!commands.count(command)) {
    log << "error: unknown command '" << command << "'\n";
    return kExitConfigError;
  }
  try {
    if (!config.is_object()) throw ConfigError("<root>", "expected an object");
    if (options.seed) config["run"]["seed"] = *options.seed;
    if (options.log_base) config["run"]["log_base"] = to_string(*options.log_base);

    Context ctx{make_experiment(parse_config(config)), config_hash(config), {}, options.override_guards, &log};
    ctx.out_dir = options.out_dir.value_or(std::filesystem::path(ctx.cfg().output.dir));

    if (command == "bound") return cmd_bound(ctx);
    if (command == "verify") return cmd_verify(ctx);
    if (command == "simulate") return cmd_simulate(ctx);
    if (command == "rademacher") return cmd_rademacher(ctx);
    return cmd_sweep(ctx);
  } catch (const ConfigError& err) {
    log << "config error: " << err.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& err) {
    log << "config error: " << err.what() << "\n";
    return kExitConfigError;
  } catch (const std::domain_error& err) {
    log << "config error: " << err.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace qrc::cli
