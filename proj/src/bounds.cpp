#include "qrc/bounds.hpp"

#include "qrc/channels.hpp"
#include "qrc/readouts.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrc {

LogBase parse_log_base(const std::string& text) {
  if (text == "e") return LogBase::E;
  if (text == "2") return LogBase::Two;
  if (text == "10") return LogBase::Ten;
  throw std::invalid_argument("log base must be one of e, 2, 10 (got '" + text + "')");
}

std::string to_string(LogBase base) {
  switch (base) {
    case LogBase::E: return "e";
    case LogBase::Two: return "2";
    case LogBase::Ten: return "10";
  }
  return "e";
}

double log_in(LogBase base, double x) {
  switch (base) {
    case LogBase::E: return std::log(x);
    case LogBase::Two: return std::log2(x);
    case LogBase::Ten: return std::log10(x);
  }
  return std::log(x);
}

std::string to_string(BoundVariant variant) {
  switch (variant) {
    case BoundVariant::General: return "general";
    case BoundVariant::Ptr: return "ptr";
    case BoundVariant::RrrEqual: return "rrr_equal";
    case BoundVariant::RrrUnequal: return "rrr_unequal";
  }
  return "general";
}

// Rademacher ------------------------------------------------------------------------

namespace {

void require_k(int k) {
  if (k < 2) throw std::invalid_argument("Rademacher bound: k must be >= 2");
}

}  // namespace

double c_qrc_poly(std::size_t theta_size, int n, int r_max, double c_max) {
  const double count = static_cast<double>(binomial(n + r_max, r_max) - 1);
  return static_cast<double>(theta_size) * static_cast<double>(r_max) * count + c_max;
}

double rademacher_bound_poly(std::size_t theta_size, int n, int r_max, double c_max, int k) {
  require_k(k);
  if (n < 1 || r_max < 1) throw std::invalid_argument("rademacher_bound_poly: need n >= 1 and r_max >= 1");
  return c_qrc_poly(theta_size, n, r_max, c_max) / std::sqrt(static_cast<double>(k));
}

double rademacher_bound_lin(std::size_t theta_size, double c_max, int k, std::optional<int> verbatim_r_max) {
  require_k(k);
  const double r = verbatim_r_max ? static_cast<double>(*verbatim_r_max) : 1.0;
  return (static_cast<double>(theta_size) * r + c_max) / std::sqrt(static_cast<double>(k));
}

double rademacher_bound_sm(std::size_t theta_size, int n, double c_max, int k) {
  require_k(k);
  return (static_cast<double>(theta_size) * static_cast<double>(n) + c_max) / std::sqrt(static_cast<double>(k));
}

// Risk bounds -----------------------------------------------------------------------

namespace {

void require_m_delta(std::size_t m, double delta) {
  if (m < 1) throw std::invalid_argument("risk bound: m must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("risk bound: delta must lie in (0, 1)");
}

double zeta_of(double r, const ProcessConstants& p) {
  const double zeta = std::max({r, p.d_wy, p.d_wv});
  if (!(zeta < 1.0)) throw std::domain_error("risk bound: zeta_max must be < 1");
  if (!(zeta > 0.0)) throw std::domain_error("risk bound: zeta_max must be > 0");
  return zeta;
}

// Fills validity, the four summands and the total from the rate functions.
void assemble(BoundReport& report, double first, double c_2, double c_3, double c_4) {
  const double m = static_cast<double>(report.m);
  const double log_m = log_in(report.log_base, m);
  report.terms[0] = first / m;
  report.terms[1] = c_2 * log_m / m;
  report.terms[2] = c_3 * std::sqrt(log_m) / std::sqrt(m);
  report.terms[3] = c_4 * std::sqrt(log_in(report.log_base, 4.0 / report.delta)) / std::sqrt(2.0 * m);
  report.valid = bound_validity(report.m, report.zeta_max, report.log_base);
  if (report.valid) report.total = report.terms[0] + report.terms[1] + report.terms[2] + report.terms[3];
}

}  // namespace

bool bound_validity(std::size_t m, double zeta_max, LogBase base) {
  const double md = static_cast<double>(m);
  return log_in(base, md) < md * log_in(base, 1.0 / zeta_max);
}

Theorem14Constants theorem14_constants(const BoundInputs& in, double c_qrc) {
  if (!(in.r > 0.0 && in.r < 1.0)) throw std::domain_error("theorem14_constants: r must lie in (0, 1)");
  const auto& p = in.process;
  Theorem14Constants c;
  c.zeta_max = zeta_of(in.r, p);
  const double log_inv = log_in(in.log_base, 1.0 / c.zeta_max);
  const double l = in.l_ell;
  const double lh = in.l_h_bar;
  c.s = l * lh + in.e_loss_zero + in.l_h0 * l;
  c.c_0 = 2.0 * in.r * l * lh / (1.0 - in.r);
  c.c_1 = l * (2.0 * lh + p.c_y) / c.zeta_max;
  c.c_2 = 2.0 * c.s / log_inv + l * in.l_r * lh * p.c_v / (c.zeta_max * log_inv);
  c.c_3 = 2.0 * l * c_qrc / std::sqrt(log_inv);
  c.c_bd = 2.0 * l * (lh / (1.0 - in.r) * (in.r + in.l_r * p.m_xi * p.l_v * p.w1_v) + p.m_xi * p.l_y * p.w1_y);
  return c;
}

BoundReport risk_bound_general(const BoundInputs& in, const Theorem14Constants& c, std::size_t m, double delta) {
  require_m_delta(m, delta);
  BoundReport report;
  report.variant = BoundVariant::General;
  report.log_base = in.log_base;
  report.m = m;
  report.delta = delta;
  report.zeta_max = c.zeta_max;
  report.r = in.r;
  report.l_h_bar = in.l_h_bar;
  report.s = c.s;
  report.c_v = in.process.c_v;
  report.c_y = in.process.c_y;
  report.c_0 = c.c_0;
  report.c_1 = c.c_1;
  report.c_2 = c.c_2;
  report.c_3 = c.c_3;
  report.c_bd = c.c_bd;
  const double decay = 1.0 - std::pow(in.r, static_cast<double>(m));
  assemble(report, decay * c.c_0 + c.c_1, c.c_2, c.c_3, c.c_bd);
  return report;
}

namespace {

// Shared part of the explicit stacks: zeta, L_h_bar, C_1, C_3 and the first
// summand of C_2.
BoundReport explicit_common(const BoundInputs& in, double r, BoundVariant variant) {
  require_m_delta(in.m, in.delta);
  const auto& p = in.process;
  BoundReport report;
  report.variant = variant;
  report.log_base = in.log_base;
  report.m = in.m;
  report.delta = in.delta;
  report.r = r;
  report.zeta_max = zeta_of(r, p);
  report.l_h_bar = lipschitz_bound_poly(in.n, in.r_max);
  report.c_v = p.c_v;
  report.c_y = p.c_y;
  const double l = in.l_ell;
  const double lh = report.l_h_bar;
  const double log_inv = log_in(in.log_base, 1.0 / report.zeta_max);
  report.s = l * lh + in.e_loss_zero + in.c_max * l;
  report.c_1 = l * (2.0 * lh + p.c_y) / report.zeta_max;
  report.c_2 = 2.0 * report.s / log_inv;
  report.c_3 = 2.0 * l * c_qrc_poly(in.theta_size, in.n, in.r_max, in.c_max) / std::sqrt(log_inv);
  return report;
}

}  // namespace

BoundReport risk_bound_ptr(const BoundInputs& in) {
  const double r = ptr_constants(in.epsilon_ptr).r;
  BoundReport report = explicit_common(in, r, BoundVariant::Ptr);
  const auto& p = in.process;
  const double l = in.l_ell;
  const double lh = report.l_h_bar;
  const double log_inv = log_in(in.log_base, 1.0 / report.zeta_max);
  report.c_0 = 2.0 * (1.0 - std::pow(r, static_cast<double>(in.m))) * r * l * lh / (1.0 - r);
  report.c_2 += 2.0 * l * lh * p.c_v / (report.zeta_max * log_inv);
  report.c_bd = 2.0 * l * (lh / (1.0 - r) * (r + 2.0 * p.m_xi * p.l_v * p.w1_v) + p.m_xi * p.l_y * p.w1_y);
  assemble(report, report.c_0 + report.c_1, report.c_2, report.c_3, report.c_bd);
  return report;
}

BoundReport risk_bound_rrr(const BoundInputs& in, C4Scope scope) {
  const ChannelConstants cc = rrr_constants(in.alpha_min, in.r0, in.r1, in.epsilon_rrr);
  const bool equal = in.r0 == in.r1;
  BoundReport report = explicit_common(in, cc.r, equal ? BoundVariant::RrrEqual : BoundVariant::RrrUnequal);
  const auto& p = in.process;
  const double l = in.l_ell;
  const double lh = report.l_h_bar;
  const double keep = 1.0 - in.alpha_min;
  const double log_inv = log_in(in.log_base, 1.0 / report.zeta_max);
  const double md = static_cast<double>(in.m);

  // Both cases share the form lh / (1 - r) (r + 2 (1 - alpha) M L_v ||w^v||).
  double inner = 0.0;
  if (equal) {
    const double q = keep * in.r0;
    report.c_0 = 2.0 * l * lh * (1.0 - std::pow(keep, md) * std::pow(in.r0, md)) * q / (1.0 - q);
    inner = lh / (1.0 - q) * (q + 2.0 * keep * p.m_xi * p.l_v * p.w1_v);
  } else {
    const double eps = in.epsilon_rrr;
    report.c_0 = 2.0 * l * lh * (1.0 - std::pow(1.0 - eps, md)) * (1.0 - eps) / eps;
    inner = lh / eps * (1.0 - eps + 2.0 * keep * p.m_xi * p.l_v * p.w1_v);
  }
  report.c_2 += 2.0 * keep * l * lh * p.c_v / (report.zeta_max * log_inv);
  const double target_term = p.m_xi * p.l_y * p.w1_y;
  report.c_bd = scope == C4Scope::InsideLossFactor ? 2.0 * l * (inner + target_term) : 2.0 * l * inner + target_term;
  assemble(report, report.c_0 + report.c_1, report.c_2, report.c_3, report.c_bd);
  return report;
}

BoundInputs with_ptr_constants(BoundInputs in) {
  const ChannelConstants cc = ptr_constants(in.epsilon_ptr);
  in.r = cc.r;
  in.l_r = cc.l_r;
  in.l_h_bar = lipschitz_bound_poly(in.n, in.r_max);
  in.l_h0 = in.c_max;
  return in;
}

BoundInputs with_rrr_constants(BoundInputs in) {
  const ChannelConstants cc = rrr_constants(in.alpha_min, in.r0, in.r1, in.epsilon_rrr);
  in.r = cc.r;
  in.l_r = cc.l_r;
  in.l_h_bar = lipschitz_bound_poly(in.n, in.r_max);
  in.l_h0 = in.c_max;
  return in;
}

// Big-O parameters --------------------------------------------------------------------

namespace {

double p3_common(const BoundInputs& in, double zeta) {
  const double count = static_cast<double>(binomial(in.n + in.r_max, in.r_max) - 1);
  const double lead = static_cast<double>(in.theta_size) * static_cast<double>(in.r_max) * count;
  const double lh = lipschitz_bound_poly(in.n, in.r_max);
  return std::max(lead, in.c_max) / (lh * std::sqrt(log_in(in.log_base, 1.0 / zeta)));
}

}  // namespace

BigOParams bigo_params_ptr(const BoundInputs& in) {
  const double r = ptr_constants(in.epsilon_ptr).r;
  const auto& p = in.process;
  const double zeta = zeta_of(r, p);
  BigOParams out;
  out.variant = BoundVariant::Ptr;
  out.p_1 = std::max({r / (1.0 - r), 2.0 * in.l_ell / zeta, in.l_ell * p.c_y / zeta});
  out.p_2 = std::max({1.0, in.c_max, 2.0 * p.c_v / zeta});
  out.p_3 = p3_common(in, zeta);
  out.p_4 = std::max(r, 2.0 * p.m_xi * p.l_v * p.w1_v) / (1.0 - r);
  return out;
}

BigOParams bigo_params_rrr(const BoundInputs& in) {
  const ChannelConstants cc = rrr_constants(in.alpha_min, in.r0, in.r1, in.epsilon_rrr);
  const auto& p = in.process;
  const double zeta = zeta_of(cc.r, p);
  const double keep = 1.0 - in.alpha_min;
  const double drive = p.m_xi * p.l_v * p.w1_v;
  BigOParams out;
  out.p_2 = std::max({1.0, 2.0 * keep * p.c_v * in.l_ell / zeta, in.c_max * in.l_ell});
  out.p_3 = p3_common(in, zeta);
  if (in.r0 == in.r1) {
    const double q = keep * in.r0;
    out.variant = BoundVariant::RrrEqual;
    out.p_1 = std::max(q / (1.0 - q), 1.0);
    // Denominator 1 - alpha r_{0,1} as published, not 1 - (1 - alpha) r_{0,1}.
    out.p_4 = keep / (1.0 - in.alpha_min * in.r0) * std::max(in.r0, 2.0 * drive);
  } else {
    const double eps = in.epsilon_rrr;
    out.variant = BoundVariant::RrrUnequal;
    out.p_1 = std::max((1.0 - eps) / eps, 1.0);
    out.p_4 = std::max(1.0 - eps, 2.0 * keep * drive) / eps;
  }
  return out;
}

// Serialisation ---------------------------------------------------------------------

namespace {

struct SymbolNames {
  const char* c_0;
  const char* c_2;
  const char* c_3;
  const char* c_bd;
};

SymbolNames symbols(BoundVariant v) {
  switch (v) {
    case BoundVariant::General: return {"c_0_qrc", "c_2", "c_3", "c_bd"};
    case BoundVariant::Ptr: return {"c_0_p", "c_2_p", "c_3_p", "c_4_p"};
    case BoundVariant::RrrEqual: return {"c_0_a_r", "c_2_r", "c_3_r", "c_4_a_r"};
    case BoundVariant::RrrUnequal: return {"c_0_b_r", "c_2_r", "c_3_r", "c_4_b_r"};
  }
  return {"c_0", "c_2", "c_3", "c_bd"};
}

}  // namespace

std::string BoundReport::to_json() const {
  const auto names = symbols(variant);
  nlohmann::ordered_json j;
  j["variant"] = to_string(variant);
  j["log_base"] = to_string(log_base);
  j["m"] = m;
  j["delta"] = delta;
  j["zeta_max"] = zeta_max;
  j["r"] = r;
  j["l_h_bar"] = l_h_bar;
  j["s"] = s;
  j["c_v"] = c_v;
  j["c_y"] = c_y;
  j[names.c_0] = c_0;
  j["c_1"] = c_1;
  j[names.c_2] = c_2;
  j[names.c_3] = c_3;
  j[names.c_bd] = c_bd;
  j["terms"] = terms;
  j["valid"] = valid;
  j["total"] = total ? nlohmann::ordered_json(*total) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

std::string to_json(const BigOParams& params) {
  const std::string suffix = params.variant == BoundVariant::Ptr ? "_p" : "_r";
  nlohmann::ordered_json j;
  j["variant"] = to_string(params.variant);
  j["p_1" + suffix] = params.p_1;
  j["p_2" + suffix] = params.p_2;
  j["p_3" + suffix] = params.p_3;
  j["p_4" + suffix] = params.p_4;
  return j.dump();
}

}  // namespace qrc
