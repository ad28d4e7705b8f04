// Acceptance run: one PASS/FAIL line per criterion.

#include "oracle.hpp"

#include "qrc/bounds.hpp"
#include "qrc/channels.hpp"
#include "qrc/experiment.hpp"
#include "qrc/learning.hpp"
#include "qrc/linalg.hpp"
#include "qrc/readouts.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace qrc;
using oracle::F;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool ok = out.passed && in_time;
  if (!ok) ++failures;
  std::printf("%s criterion %d (%s): %s [%.2fs of %.0fs%s]\n", ok ? "PASS" : "FAIL", id, title, out.detail.c_str(),
              secs, budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Relative error against a high-precision value, absolute when it is zero.
double rel(double got, const F& want) {
  const F diff = abs(F(got) - want);
  return want == 0 ? static_cast<double>(diff) : static_cast<double>(diff / abs(want));
}

struct RelTracker {
  double worst = 0.0;
  std::string where;
  int count = 0;
  void operator()(const std::string& name, double got, const F& want) {
    const double e = rel(got, want);
    ++count;
    if (!(e <= worst)) {
      worst = e;
      where = name;
    }
  }
};

std::vector<ReservoirMapPtr> ptr_grid(int n) {
  return instantiate(parameter_grid(PtrGridSpec{n, 2, 1, {0.5, 1.0}, {1.0, 2.0}}));
}

std::vector<ReservoirMapPtr> rrr_grid(int n, std::vector<double> alphas, double r0 = 0.4, double r1 = 0.4) {
  const Eigen::Index d = Eigen::Index{1} << n;
  auto t0 = make_base_channel(r0, random_unitary(d, 11), DensityMatrix::basis_state(n, 0));
  auto t1 = make_base_channel(r1, random_unitary(d, 12), DensityMatrix::basis_state(n, d - 1));
  std::vector<DensityMatrix> sigmas{DensityMatrix::maximally_mixed(n), DensityMatrix::basis_state(n, 0)};
  return instantiate(parameter_grid(RrrGridSpec{std::move(alphas), std::move(sigmas), std::move(t0), std::move(t1)}));
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// 1 ----------------------------------------------------------------------------------------

Outcome closed_forms() {
  RelTracker track;
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 6;
    const int r_max = 1 + (i / 6) % 4;
    const int ell = 1 + i % 4;
    const int k = 2 + static_cast<int>(rng() % 200);
    const double eps_ptr = uniform(rng, 0.005, ptr_epsilon_limit() - 0.005);
    const double alpha = uniform(rng, 0.05, 0.95);
    const double r1 = uniform(rng, 0.05, 0.45);
    const double r0 = i % 2 == 0 ? r1 : uniform(rng, r1 + 1e-3, 0.99 - r1);
    const double eps_rrr = uniform(rng, 0.01, 0.24);
    const auto theta = static_cast<std::size_t>(1 + rng() % 64);
    const double c_max = uniform(rng, 0.0, 3.0);

    BoundInputs in;
    in.n = n;
    in.r_max = r_max;
    in.c_max = c_max;
    in.theta_size = theta;
    in.m = static_cast<std::size_t>(50 + rng() % 20000);
    in.delta = uniform(rng, 0.01, 0.5);
    in.l_ell = uniform(rng, 0.5, 2.0);
    in.e_loss_zero = uniform(rng, 0.0, 2.0);
    auto& p = in.process;
    p.l_v = uniform(rng, 0.01, 1.0);
    p.l_y = uniform(rng, 0.1, 3.0);
    p.d_wv = uniform(rng, 0.1, 0.95);
    p.d_wy = uniform(rng, 0.1, 0.95);
    p.c_v = uniform(rng, 0.0, 4.0);
    p.c_y = uniform(rng, 0.0, 4.0);
    p.w1_v = 1.0 / (1.0 - p.d_wv);
    p.w1_y = 1.0 / (1.0 - p.d_wy);
    p.m_xi = uniform(rng, 0.2, 2.0);
    in.epsilon_ptr = eps_ptr;
    in.alpha_min = alpha;
    in.r0 = r0;
    in.r1 = r1;
    in.epsilon_rrr = eps_rrr;

    oracle::Problem pb;
    pb.n = n;
    pb.r_max = r_max;
    pb.c_max = c_max;
    pb.theta = F(theta);
    pb.m = static_cast<long>(in.m);
    pb.delta = in.delta;
    pb.l = in.l_ell;
    pb.e0 = in.e_loss_zero;
    pb.p = {p.l_v, p.l_y, p.d_wv, p.d_wy, p.c_v, p.c_y, p.w1_v, p.w1_y, p.m_xi};

    const std::string at = "[" + std::to_string(i) + "] ";
    track(at + "L_h poly", lipschitz_bound_poly(n, r_max), oracle::lh_poly(n, r_max));
    track(at + "L_h SM", lipschitz_bound_sm(n, ell), oracle::lh_sm(n, ell));
    track(at + "r_PTR", ptr_constants(eps_ptr).r, oracle::r_ptr(eps_ptr));
    track(at + "r_RRR", rrr_constants(alpha, r0, r1, eps_rrr).r, oracle::r_rrr(alpha, r0, r1, eps_rrr));
    track(at + "Rad poly", rademacher_bound_poly(theta, n, r_max, c_max, k), oracle::rad_poly(F(theta), n, r_max, c_max, k));
    track(at + "Rad lin", rademacher_bound_lin(theta, c_max, k), oracle::rad_lin(F(theta), c_max, k));
    track(at + "Rad SM", rademacher_bound_sm(theta, n, c_max, k), oracle::rad_sm(F(theta), n, c_max, k));

    const auto compare = [&](const std::string& tag, const BoundReport& got, const oracle::Totals& want) {
      track(at + tag + " zeta", got.zeta_max, want.zeta);
      track(at + tag + " C0", got.c_0, want.c0);
      track(at + tag + " C1", got.c_1, want.c1);
      track(at + tag + " C2", got.c_2, want.c2);
      track(at + tag + " C3", got.c_3, want.c3);
      track(at + tag + " C4", got.c_bd, want.c4);
      for (int t = 0; t < 4; ++t) track(at + tag + " term" + std::to_string(t), got.terms[t], want.terms[t]);
      if (got.valid != want.valid) track(at + tag + " validity", 1.0, F(0));
      if (got.total) track(at + tag + " total", *got.total, want.total);
    };

    // General route with the channel's own r and L_R and an SM-style readout.
    {
      BoundInputs g = in;
      g.r = static_cast<double>(oracle::r_rrr(alpha, r0, r1, eps_rrr));
      g.l_r = 2.0 * (1.0 - alpha);
      g.l_h_bar = lipschitz_bound_sm(n, ell);
      g.l_h0 = c_max;
      const double c_qrc = static_cast<double>(theta) * n + c_max;
      const auto consts = theorem14_constants(g, c_qrc);
      const auto want = oracle::general(pb, g.r, g.l_r, oracle::lh_sm(n, ell), c_max, F(theta) * n + c_max);
      track(at + "general S", consts.s, want.s);
      track(at + "general C0_QRC", consts.c_0, want.c0);
      compare("general", risk_bound_general(g, consts, in.m, in.delta), want);
    }
    compare("ptr", risk_bound_ptr(in), oracle::explicit_ptr(pb, eps_ptr));
    compare("rrr", risk_bound_rrr(in, C4Scope::InsideLossFactor),
            oracle::explicit_rrr(pb, alpha, r0, r1, eps_rrr, true));
    compare("rrr outside", risk_bound_rrr(in, C4Scope::Outside),
            oracle::explicit_rrr(pb, alpha, r0, r1, eps_rrr, false));

    const auto bp = bigo_params_ptr(in);
    const auto op = oracle::bigo_ptr(pb, eps_ptr);
    track(at + "P1p", bp.p_1, op.p1);
    track(at + "P2p", bp.p_2, op.p2);
    track(at + "P3p", bp.p_3, op.p3);
    track(at + "P4p", bp.p_4, op.p4);
    const auto br = bigo_params_rrr(in);
    const auto orr = oracle::bigo_rrr(pb, alpha, r0, r1, eps_rrr);
    track(at + "P1r", br.p_1, orr.p1);
    track(at + "P2r", br.p_2, orr.p2);
    track(at + "P3r", br.p_3, orr.p3);
    track(at + "P4r", br.p_4, orr.p4);
  }
  return {track.worst <= 1e-12, std::to_string(track.count) + " values over 50 points, max rel err " +
                                    num(track.worst) + " at " + track.where + " (tol 1e-12)"};
}

// 2 ----------------------------------------------------------------------------------------

Outcome monomial_count() {
  int bad = 0;
  std::string first;
  for (int n = 1; n <= 4; ++n) {
    for (int r = 1; r <= 4; ++r) {
      // Brute force: every exponent vector in {0..r}^n with degree in [1, r].
      std::set<std::vector<int>> brute;
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      while (true) {
        int deg = 0;
        for (int x : e) deg += x;
        if (deg >= 1 && deg <= r) brute.insert(e);
        std::size_t pos = 0;
        while (pos < e.size() && ++e[pos] > r) e[pos++] = 0;
        if (pos == e.size()) break;
      }
      const auto got = enumerate_monomials(n, r);
      std::set<std::vector<int>> seen;
      for (const auto& m : got) seen.insert(m.exponents);
      const bool ok = got.size() == brute.size() && seen == brute && got.size() == binomial(n + r, r) - 1;
      if (!ok && bad++ == 0) first = "n=" + std::to_string(n) + " R=" + std::to_string(r);
    }
  }
  return {bad == 0, bad == 0 ? "16 (n, R) pairs match brute force and C(n+R,R)-1" : first + " mismatched"};
}

// 3 ----------------------------------------------------------------------------------------

Outcome cptp() {
  double worst_trace = 0.0;
  double worst_eig = 1.0;
  int points = 0;
  std::mt19937_64 rng(3);
  const auto certify = [&](const std::vector<ReservoirMapPtr>& grid, const InputDomain& dom) {
    for (const auto& ch : grid) {
      ++points;
      for (int i = 0; i < 10; ++i) {
        const auto rep = verify_cptp(ch->superoperator(uniform(rng, dom.lo, dom.hi)));
        worst_trace = std::max(worst_trace, rep.trace_dev);
        worst_eig = std::min(worst_eig, rep.min_choi_eig);
      }
    }
  };
  for (int n = 1; n <= 3; ++n) certify(ptr_grid(n), ptr_input_domain(0.1));
  for (int n = 1; n <= 4; ++n) certify(rrr_grid(n, {0.2, 0.4, 0.6}), rrr_input_domain(0.1));
  const bool ok = worst_trace <= 1e-10 && worst_eig >= -1e-10;
  return {ok, std::to_string(points) + " grid points x 10 inputs, max trace dev " + num(worst_trace) +
                  ", min Choi eig " + num(worst_eig)};
}

// 4 ----------------------------------------------------------------------------------------

double max_contraction(const std::vector<ReservoirMapPtr>& grid, const InputDomain& dom, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (const auto& ch : grid) {
    for (int p = 0; p < 500; ++p) {
      const auto a = DensityMatrix::random(n, rng());
      const auto b = DensityMatrix::random(n, rng());
      const double d0 = schatten2(a.matrix() - b.matrix());
      for (int i = 0; i < 20; ++i) {
        const double v = uniform(rng, dom.lo, dom.hi);
        worst = std::max(worst, schatten2(ch->apply(v, a.matrix()) - ch->apply(v, b.matrix())) / d0);
      }
    }
  }
  return worst;
}

Outcome contraction() {
  const double r_ptr = ptr_constants(0.1).r;
  const double ptr = max_contraction(ptr_grid(3), ptr_input_domain(0.1), 3, 41);
  const double r_rrr = rrr_constants(0.2, 0.4, 0.4, 0.1).r;
  const double rrr = max_contraction(rrr_grid(3, {0.2, 0.5}), rrr_input_domain(0.1), 3, 42);
  const double r_rrr_b = rrr_constants(0.2, 0.5, 0.3, 0.1).r;
  const double rrr_b = max_contraction(rrr_grid(3, {0.2, 0.5}, 0.5, 0.3), rrr_input_domain(0.1), 3, 43);
  const bool ok = ptr <= r_ptr + 1e-9 && rrr <= r_rrr + 1e-9 && rrr_b <= r_rrr_b + 1e-9;
  return {ok, "n=3, 500 pairs x 20 inputs per grid point: PTR " + num(ptr) + " <= " + num(r_ptr) + ", RRR(r0=r1) " +
                  num(rrr) + " <= " + num(r_rrr) + ", RRR(r0>r1) " + num(rrr_b) + " <= " + num(r_rrr_b)};
}

// 5 ----------------------------------------------------------------------------------------

double max_input_ratio(const std::vector<ReservoirMapPtr>& grid, const InputDomain& dom, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (const auto& ch : grid) {
    for (int p = 0; p < 500; ++p) {
      const auto rho = DensityMatrix::random(n, rng());
      const double v = uniform(rng, dom.lo, dom.hi);
      const double w = uniform(rng, dom.lo, dom.hi);
      if (v == w) continue;
      worst = std::max(worst, schatten2(ch->apply(v, rho.matrix()) - ch->apply(w, rho.matrix())) / std::abs(v - w));
    }
  }
  return worst;
}

Outcome input_lipschitz() {
  const double ptr = max_input_ratio(ptr_grid(3), ptr_input_domain(0.1), 3, 51);
  const double rrr = max_input_ratio(rrr_grid(3, {0.2, 0.5}), rrr_input_domain(0.1), 3, 52);
  const double l_rrr = 2.0 * (1.0 - 0.2);
  const bool ok = ptr <= 2.0 + 1e-9 && rrr <= l_rrr + 1e-9;
  return {ok, "n=3, 500 input pairs per grid point: PTR " + num(ptr) + " <= 2, RRR " + num(rrr) + " <= " + num(l_rrr)};
}

// 6 ----------------------------------------------------------------------------------------

struct EspResult {
  double envelope_ratio = 0.0;  // max_t d_t / (r^t d_0 (1 + 1e-9)^t + floor)
  double washout_gap = 0.0;
  int washout = 0;
};

EspResult esp(const std::vector<ReservoirMapPtr>& grid, double r, const ProcessSpec& spec, int n, double l_h,
              std::uint64_t seed) {
  EspResult out;
  out.washout = washout_length(r, 1e-10);
  PolynomialReadout::Weights w;
  for (const auto& m : enumerate_monomials(n, 1)) w[m] = 1.0;
  const PolynomialReadout h(n, 1, 1, 0.0, 1.0, w);
  std::mt19937_64 rng(seed);
  const int steps = std::max(out.washout, 40);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    const auto series = generate_series(spec, static_cast<std::size_t>(steps), derive_seed(seed, t));
    for (int p = 0; p < 20; ++p) {
      ComplexMatrix a = DensityMatrix::random(n, rng()).matrix();
      ComplexMatrix b = DensityMatrix::random(n, rng()).matrix();
      const double d0 = schatten2(a - b);
      for (int s = 1; s <= steps; ++s) {
        const double v = series.v[static_cast<std::size_t>(s - 1)];
        a = grid[t]->apply(v, a);
        b = grid[t]->apply(v, b);
        // The 1e-12 floor absorbs double rounding once the envelope drops below it.
        const double envelope = std::pow(r, s) * d0 * std::pow(1.0 + 1e-9, s) + 1e-12;
        out.envelope_ratio = std::max(out.envelope_ratio, schatten2(a - b) / envelope);
        if (s == out.washout) out.washout_gap = std::max(out.washout_gap, std::abs(h.evaluate(a) - h.evaluate(b)) / l_h);
      }
    }
  }
  return out;
}

ProcessSpec default_process(const std::string& variant) {
  cli::ExperimentConfig cfg;
  cfg.channel.variant = variant;
  return cli::make_experiment(cfg).process;
}

Outcome echo_state() {
  const int n = 2;
  const double l_h = lipschitz_bound_poly(n, 1);
  const auto rrr = esp(rrr_grid(n, {0.2, 0.5}), rrr_constants(0.2, 0.4, 0.4, 0.1).r, default_process("rrr"), n, l_h, 61);
  const auto ptr = esp(ptr_grid(n), ptr_constants(0.1).r, default_process("ptr"), n, l_h, 62);
  const bool rrr_ok = rrr.envelope_ratio <= 1.0 && rrr.washout_gap < 1e-8;
  const bool ptr_ok = ptr.envelope_ratio <= 1.0 && ptr.washout_gap < 1e-8;
  return {rrr_ok && ptr_ok,
          "n=2, distance/envelope max and washout gap/L_h: RRR " + num(rrr.envelope_ratio) + ", " +
              num(rrr.washout_gap) + " (washout " + std::to_string(rrr.washout) + "); PTR " +
              num(ptr.envelope_ratio) + ", " + num(ptr.washout_gap) + " (washout " + std::to_string(ptr.washout) +
              "); need <= 1 and < 1e-8"};
}

// 7 ----------------------------------------------------------------------------------------

Outcome rademacher() {
  const std::vector<int> ks{4, 16, 64};
  const std::vector<std::size_t> thetas{1, 2, 4, 8};
  const ProcessSpec spec = default_process("rrr");
  const double c_max = 1.0;
  int poly_bad = 0;
  int lin_bad = 0;
  int checked = 0;
  double tightest = 0.0;
  std::string lin_first;
  for (int n = 1; n <= 3; ++n) {
    const auto grid = rrr_grid(n, {0.2, 0.4, 0.6, 0.8});
    const double r = rrr_constants(0.2, 0.4, 0.4, 0.1).r;
    std::vector<RademacherQuery> queries;
    for (int r_max = 1; r_max <= 2; ++r_max) {
      for (auto t : thetas) {
        for (int k : ks) queries.push_back({r_max, t, k});
      }
    }
    const auto horizon = static_cast<std::size_t>(washout_length(r, 1e-10));
    const auto est = rademacher_mc_nested(grid, n, c_max, spec, queries, horizon, 200, derive_seed(70, n));
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto& qu = queries[q];
      const double upper = est[q].estimate + 3.0 * est[q].std_err;
      const double poly = rademacher_bound_poly(qu.theta_size, n, qu.r_max, c_max, qu.k);
      ++checked;
      tightest = std::max(tightest, upper / poly);
      if (upper > poly) ++poly_bad;
      if (qu.r_max == 1 && upper > rademacher_bound_lin(qu.theta_size, c_max, qu.k)) {
        if (lin_bad++ == 0) {
          lin_first = "n=" + std::to_string(n) + " |Theta|=" + std::to_string(qu.theta_size) +
                      " k=" + std::to_string(qu.k) + ": " + num(upper) + " > " +
                      num(rademacher_bound_lin(qu.theta_size, c_max, qu.k));
        }
      }
    }
  }
  // Slope of the bound on a log-log k sweep.
  double worst_slope = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double b4 = rademacher_bound_poly(8, n, 2, c_max, 4);
    const double b64 = rademacher_bound_poly(8, n, 2, c_max, 64);
    const double slope = (std::log(b64) - std::log(b4)) / (std::log(64.0) - std::log(4.0));
    worst_slope = std::max(worst_slope, std::abs(slope + 0.5));
  }
  const bool ok = poly_bad == 0 && lin_bad == 0 && worst_slope <= 1e-12;
  std::string detail = std::to_string(checked) + " RRR configs, 200 reps: poly violations " + std::to_string(poly_bad) +
                       " (max (est+3se)/bound " + num(tightest) + "), linear-class violations " +
                       std::to_string(lin_bad) + ", |slope + 0.5| " + num(worst_slope);
  if (lin_bad > 0) detail += "; first linear violation " + lin_first;
  return {ok, detail};
}

// 8 ----------------------------------------------------------------------------------------

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double route_gap(const BoundReport& general, const BoundReport& explicit_form) {
  double worst = 0.0;
  for (int t = 0; t < 4; ++t) worst = std::max(worst, rel_diff(general.terms[t], explicit_form.terms[t]));
  if (general.total && explicit_form.total) worst = std::max(worst, rel_diff(*general.total, *explicit_form.total));
  if (general.valid != explicit_form.valid) worst = 1.0;
  return worst;
}

Outcome risk_domination() {
  std::string detail;
  bool ok = true;
  double worst_route = 0.0;
  for (const std::string variant : {"ptr", "rrr"}) {
    cli::ExperimentConfig cfg;
    cfg.channel.variant = variant;
    cfg.channel.n = 2;
    cfg.run.m = 200;
    cfg.run.delta = 0.1;
    const auto e = cli::make_experiment(cfg);
    const auto grid = e.channels();
    const auto loss0 = estimate_loss_at_zero(e.process, cfg.loss, 100000, 8);
    const BoundInputs in = cli::bound_inputs(e, loss0.estimate);
    const BoundReport bound = cli::primary_bound(e, in);

    // Two assembly routes.
    const BoundInputs g = variant == "ptr" ? with_ptr_constants(in) : with_rrr_constants(in);
    const auto general =
        risk_bound_general(g, theorem14_constants(g, c_qrc_poly(in.theta_size, in.n, in.r_max, in.c_max)), in.m,
                           in.delta);
    worst_route = std::max(worst_route, route_gap(general, bound));
    if (variant == "rrr") {
      BoundInputs b = in;
      b.r0 = 0.5;
      b.r1 = 0.3;
      const BoundInputs gb = with_rrr_constants(b);
      const auto gen_b = risk_bound_general(
          gb, theorem14_constants(gb, c_qrc_poly(b.theta_size, b.n, b.r_max, b.c_max)), b.m, b.delta);
      worst_route = std::max(worst_route, route_gap(gen_b, risk_bound_rrr(b)));
    }

    int exceed = 0;
    double max_gap = 0.0;
    for (int run = 0; run < 50; ++run) {
      const std::uint64_t seed = derive_seed(800, static_cast<std::uint64_t>(run));
      const auto series = generate_series(e.process, cfg.run.m, derive_seed(seed, 1));
      const auto fit = fit_readout(grid, e.constants.r, series, cfg.run.m, e.readout_space());
      const ReservoirFunctional h(grid[fit.theta_index], fit.readout, e.constants.r);
      const double emp = empirical_risk(h, series, cfg.run.m, cfg.loss);
      const auto gen = generalisation_error_mc(h, e.process, cfg.loss, 2000, static_cast<std::size_t>(h.washout()),
                                               derive_seed(seed, 2));
      const double gap = std::abs(gen.estimate - emp);
      max_gap = std::max(max_gap, gap);
      if (!bound.total || gap > *bound.total) ++exceed;
    }
    const double frac = exceed / 50.0;
    ok = ok && frac <= 0.1;
    detail += variant + ": exceed fraction " + num(frac) + " (max gap " + num(max_gap) + ", bound " +
              (bound.total ? num(*bound.total) : std::string("invalid")) + "); ";
  }
  ok = ok && worst_route <= 1e-9;
  return {ok, detail + "route agreement max rel diff " + num(worst_route) + " (tol 1e-9)"};
}

// 9 ----------------------------------------------------------------------------------------

Outcome validity_gate() {
  const bool rejects = !bound_validity(10, 0.9);
  const bool accepts = bound_validity(100, 0.9);
  return {rejects && accepts, std::string("zeta 0.9: m=10 ") + (rejects ? "rejected" : "accepted") + ", m=100 " +
                                  (accepts ? "accepted" : "rejected")};
}

// 10 ---------------------------------------------------------------------------------------

Outcome scaling() {
  bool ok = true;
  std::string detail;
  for (const std::string variant : {"ptr", "rrr"}) {
    cli::ExperimentConfig cfg;
    cfg.channel.variant = variant;
    cfg.run.e_loss_zero = 0.5;
    cfg.sweep.axis = "n";
    for (int n = 1; n <= 8; ++n) cfg.sweep.values.push_back(n);
    cfg.readout.kind = "poly";
    cfg.readout.r_max = 2;
    const auto poly_rows = cli::sweep_table(cli::make_experiment(cfg), 0.5);
    cfg.readout.kind = "sm";
    cfg.readout.ell = 1;
    cfg.readout.ell_max = 2;
    const auto sm_rows = cli::sweep_table(cli::make_experiment(cfg), 0.5);

    bool monotone = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < poly_rows.size(); ++i) {
      const auto& row = poly_rows[i];
      worst = std::max(worst, rel(row.l_h_bar_poly, oracle::lh_poly(row.n, row.r_max)));
      worst = std::max(worst, rel(sm_rows[i].rademacher_sm,
                                  oracle::rad_sm(F(sm_rows[i].theta_size), sm_rows[i].n, 1.0, sm_rows[i].k)));
      if (i > 0) {
        monotone = monotone && row.bound_total && poly_rows[i - 1].bound_total &&
                   *row.bound_total > *poly_rows[i - 1].bound_total && row.l_h_bar_poly > poly_rows[i - 1].l_h_bar_poly;
      }
    }
    // SM Rademacher bound: constant first differences in n.
    double linear_dev = 0.0;
    const double step = sm_rows[1].rademacher_sm - sm_rows[0].rademacher_sm;
    for (std::size_t i = 1; i < sm_rows.size(); ++i) {
      linear_dev = std::max(linear_dev, std::abs(sm_rows[i].rademacher_sm - sm_rows[i - 1].rademacher_sm - step) / step);
    }
    const bool v_ok = monotone && worst <= 1e-12 && linear_dev <= 1e-12;
    ok = ok && v_ok;
    detail += variant + ": poly bound monotone " + (monotone ? "yes" : "no") + ", closed-form rel err " + num(worst) +
              ", SM linearity dev " + num(linear_dev) + "; ";
  }
  return {ok, detail + "n = 1..8"};
}

}  // namespace

int main() {
  std::printf("qrcbench acceptance run\n");
  criterion(1, "closed-form oracle equality", 1, closed_forms);
  criterion(2, "monomial count", 1, monomial_count);
  criterion(3, "CPTP certification", 120, cptp);
  criterion(4, "contraction domination", 300, contraction);
  criterion(5, "input-Lipschitz domination", 120, input_lipschitz);
  criterion(6, "echo-state property", 60, echo_state);
  criterion(7, "Rademacher domination", 600, rademacher);
  criterion(8, "risk-bound domination", 1800, risk_domination);
  criterion(9, "validity gate", 1, validity_gate);
  criterion(10, "scaling reproduction", 1, scaling);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
