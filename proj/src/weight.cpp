#include "morrad/weight.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "morrad/error.hpp"

namespace morrad {
namespace {

constexpr double kRelTol = 1e-12;

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& context) {
  std::string owned(text);
  char* end = nullptr;
  const double v = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(v)) {
    throw UsageError("cannot parse number '" + owned + "' in " + context);
  }
  return v;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Weight Weight::constant_one() {
  Weight w;
  w.kind_ = WeightKind::ConstantOne;
  w.spec_ = "one";
  return w;
}

Weight Weight::power(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError("power weight needs q > 0, got " + shortest(q));
  }
  Weight w;
  w.kind_ = WeightKind::Power;
  w.q_ = q;
  w.spec_ = "power:q=" + shortest(q);
  return w;
}

Weight Weight::log(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError("log weight needs q > 0, got " + shortest(q));
  }
  Weight w;
  w.kind_ = WeightKind::Log;
  w.q_ = q;
  w.spec_ = "log:q=" + shortest(q);
  return w;
}

Weight Weight::table(std::vector<WeightSample> samples, std::string label) {
  if (samples.empty()) throw ValidationError("table weight has no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const WeightSample& s = samples[i];
    if (!(s.t > 0.0 && s.t <= 1.0)) {
      throw ValidationError("table abscissa t=" + shortest(s.t) +
                            " outside (0,1]");
    }
    if (!(s.w > 0.0) || !std::isfinite(s.w)) {
      throw ValidationError("table value at t=" + shortest(s.t) +
                            " must be positive");
    }
    if (i > 0 && !(s.t > samples[i - 1].t)) {
      throw ValidationError("table abscissae not strictly increasing at t=" +
                            shortest(s.t));
    }
  }
  Weight w;
  w.kind_ = WeightKind::Table;
  w.samples_ = std::move(samples);
  w.spec_ = label.empty()
                ? "table:<" + std::to_string(w.samples_.size()) + " samples>"
                : std::move(label);
  return w;
}

Weight Weight::load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open weight table '" + path + "'");
  std::string line;
  std::vector<WeightSample> samples;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : line) {
        if (c != ' ') compact += c;
      }
      if (compact != "t,w") {
        throw UsageError("weight table '" + path + "' must start with header t,w");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw UsageError("weight table line " + std::to_string(line_no) +
                       " is not 't,w'");
    }
    const std::string ctx = path + ":" + std::to_string(line_no);
    samples.push_back({parse_double(trim(line.substr(0, comma)), ctx),
                       parse_double(trim(line.substr(comma + 1)), ctx)});
  }
  return table(std::move(samples), "table:" + path);
}

Weight Weight::parse(std::string_view spec) {
  const std::string text = trim(std::string(spec));
  if (text == "one") return constant_one();
  auto param = [&](std::string_view prefix) -> double {
    std::string_view rest = std::string_view(text).substr(prefix.size());
    if (rest.substr(0, 2) != "q=") {
      throw UsageError("weight '" + text + "' expects q=<float>");
    }
    return parse_double(rest.substr(2), "weight '" + text + "'");
  };
  if (text.rfind("power:", 0) == 0) return power(param("power:"));
  if (text.rfind("log:", 0) == 0) return log(param("log:"));
  if (text.rfind("table:", 0) == 0) return load_table(text.substr(6));
  throw UsageError("unknown weight '" + text +
                   "' (expected one, power:q=, log:q=, table:<path>)");
}

double Weight::eval(double t) const {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError("weight evaluated at t=" + shortest(t) +
                      " outside (0,1]");
  }
  switch (kind_) {
    case WeightKind::ConstantOne:
      return 1.0;
    case WeightKind::Power:
      return std::pow(t, 1.0 / q_);
    case WeightKind::Log:
      return std::pow(1.0 - std::log2(t), -1.0 / q_);
    case WeightKind::Table: {
      if (t <= samples_.front().t) return samples_.front().w;
      if (t >= samples_.back().t) return samples_.back().w;
      auto hi = std::upper_bound(
          samples_.begin(), samples_.end(), t,
          [](double x, const WeightSample& s) { return x < s.t; });
      auto lo = hi - 1;
      if (t == lo->t) return lo->w;
      const double lambda = (t - lo->t) / (hi->t - lo->t);
      return lo->w + lambda * (hi->w - lo->w);
    }
  }
  return 1.0;
}

double Weight::at_dyadic(std::int64_t m) const {
  if (m < 0) throw DomainError("dyadic level must be >= 0");
  switch (kind_) {
    case WeightKind::ConstantOne:
      return 1.0;
    case WeightKind::Power:
      return std::exp2(-static_cast<double>(m) / q_);
    case WeightKind::Log:
      return std::pow(static_cast<double>(m) + 1.0, -1.0 / q_);
    case WeightKind::Table: {
      const double t = m > 1100 ? 0.0 : std::ldexp(1.0, -static_cast<int>(m));
      if (t <= samples_.front().t) return samples_.front().w;
      return eval(t);
    }
  }
  return 1.0;
}

const char* to_string(Trend trend) {
  switch (trend) {
    case Trend::Decaying:
      return "decaying";
    case Trend::Bounded:
      return "bounded";
    case Trend::Growing:
      return "growing";
  }
  return "bounded";
}

std::string Condition10Report::verdict() const {
  return std::string(to_string(trend)) + " up to M=" + std::to_string(horizon);
}

Condition10Report check_condition10(const Weight& w, std::int64_t M) {
  if (M < 1) throw DomainError("growth horizon must be >= 1");
  Condition10Report rep;
  rep.horizon = M;
  const std::int64_t tail_start = std::max<std::int64_t>(1, (3 * M) / 4);
  double s_tail = 0.0;
  double s_last = 0.0;
  rep.sup = -1.0;
  for (std::int64_t m = 1; m <= M; ++m) {
    const double s = w.at_dyadic(m) * std::sqrt(static_cast<double>(m));
    if (s > rep.sup) {
      rep.sup = s;
      rep.argmax = m;
    }
    if (m == tail_start) s_tail = s;
    if (m == M) s_last = s;
  }

  constexpr double kSlopeThreshold = 0.05;
  if (s_tail > 0.0) {
    rep.growth_ratio = s_last / s_tail;
  } else {
    rep.growth_ratio = s_last > 0.0 ? INFINITY : 0.0;
  }
  if (M > tail_start && s_tail > 0.0 && s_last > 0.0) {
    rep.loglog_slope = std::log(rep.growth_ratio) /
                       std::log(static_cast<double>(M) / tail_start);
  } else if (M > tail_start && s_last == 0.0) {
    rep.loglog_slope = -INFINITY;
  } else {
    rep.loglog_slope = 0.0;
  }
  if (rep.loglog_slope > kSlopeThreshold) {
    rep.trend = Trend::Growing;
  } else if (rep.loglog_slope < -kSlopeThreshold) {
    rep.trend = Trend::Decaying;
  } else {
    rep.trend = Trend::Bounded;
  }
  return rep;
}

WeightDiagnostics validate(const Weight& w, std::int64_t grid_depth) {
  if (grid_depth < 1) throw DomainError("grid depth must be >= 1");
  WeightDiagnostics diag;
  diag.grid_depth = grid_depth;

  if (std::fabs(w.eval(1.0) - 1.0) > kRelTol) {
    throw ValidationError("weight " + w.spec() + " has w(1)=" +
                          shortest(w.eval(1.0)) + ", expected 1");
  }

  // Dyadic grid in ratio form: w(2^{-j-1}) <= w(2^{-j}) <= 2 w(2^{-j-1}).
  // The upper half is the w(t)/t monotonicity between t and 2t.
  double prev = w.at_dyadic(0);
  double doubling = 1.0;
  std::int64_t effective_depth = grid_depth;
  for (std::int64_t j = 0; j < grid_depth; ++j) {
    const double next = w.at_dyadic(j + 1);
    if (next < 1e-300) {
      // The weight has underflowed; nothing below is resolvable.
      effective_depth = j;
      break;
    }
    if (next > prev * (1.0 + kRelTol)) {
      throw ValidationError("weight " + w.spec() +
                            " decreases between t=2^-" + std::to_string(j + 1) +
                            " and t=2^-" + std::to_string(j));
    }
    const double ratio = prev / next;
    if (ratio > 2.0 * (1.0 + kRelTol)) {
      throw ValidationError("w(t)/t increases at t=2^-" + std::to_string(j + 1) +
                            " for weight " + w.spec() +
                            " (w(2t)/w(t)=" + shortest(ratio) + ")");
    }
    doubling = std::max(doubling, ratio);
    prev = next;
  }

  if (w.kind() == WeightKind::Table) {
    const auto& s = w.samples();
    // Consecutive breakpoints, plus the constant extensions at both ends.
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const WeightSample& a = s[i];
      const WeightSample& b = s[i + 1];
      if (b.w < a.w * (1.0 - kRelTol)) {
        throw ValidationError("table weight decreases at t=" + shortest(b.t));
      }
      const double slope = (b.w - a.w) / (b.t - a.t);
      const double intercept = a.w - slope * a.t;
      if (intercept < -kRelTol * std::max(1.0, a.w)) {
        throw ValidationError("table segment ending at t=" + shortest(b.t) +
                              " has negative intercept " + shortest(intercept) +
                              " (w(t)/t would increase)");
      }
    }
    for (const WeightSample& a : s) {
      if (2.0 * a.t <= 1.0) {
        doubling = std::max(doubling, w.eval(2.0 * a.t) / a.w);
      }
    }
  }

  diag.doubling_constant = doubling;
  diag.doubling_within_analytic_bound =
      doubling <= WeightDiagnostics::kAnalyticDoublingBound * (1.0 + kRelTol);
  diag.w_zero_limit_estimate = w.at_dyadic(effective_depth);
  diag.condition10 = check_condition10(w, grid_depth);
  diag.condition10_sup = diag.condition10.sup;
  diag.condition10_argmax = diag.condition10.argmax;
  diag.quasi_concave = true;
  return diag;
}

}  // namespace morrad
