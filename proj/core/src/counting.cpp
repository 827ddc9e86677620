// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsa/counting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rmsa/errors.hpp"
#include "rmsa/zeta.hpp"

namespace rmsa {

namespace {

constexpr double kOrthogonalTol = 1e-12;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

void validate(const DiracLaw& d) {
  if (d.count < 0) {
    throw ValidationError("dirac count must be a nonnegative integer, got " +
                          std::to_string(d.count));
  }
}

void validate(const BinomialLaw& b) {
  if (b.trials < 1) {
    throw ValidationError("binomial trials must be a positive integer, got " +
                          std::to_string(b.trials));
  }
  if (!(b.success_prob >= 0.0 && b.success_prob <= 1.0)) {
    throw ValidationError("binomial success probability must lie in [0, 1], got " +
                          std::to_string(b.success_prob));
  }
}

void validate(const PoissonLaw& p) {
  if (!(p.mean > 0.0) || !std::isfinite(p.mean)) {
    throw ValidationError("poisson mean must be a positive real, got " +
                          std::to_string(p.mean));
  }
}

void validate(const OrthogonalDieLaw& d) {
  if (d.lo < 0 || d.hi < 1 || d.lo >= d.hi) {
    throw ValidationError("orthogonal die needs 0 <= m < n, got m = " + std::to_string(d.lo) +
                          ", n = " + std::to_string(d.hi));
  }
  // Mean-variance equality in exact integer arithmetic:
  // (m + n) / 2 == ((n - m + 1)^2 - 1) / 12.
  const std::int64_t span1 = d.hi - d.lo + 1;
  if (6 * (d.lo + d.hi) != span1 * span1 - 1) {
    throw ValidationError("orthogonal die (" + std::to_string(d.lo) + ", " +
                          std::to_string(d.hi) + ") violates mean-variance equality");
  }
}

void validate(const NegativeBinomialLaw& nb) {
  if (!(nb.successes > 0.0) || !std::isfinite(nb.successes)) {
    throw ValidationError("negative binomial r must be a positive real, got " +
                          std::to_string(nb.successes));
  }
  if (!(nb.success_prob > 0.0 && nb.success_prob < 1.0)) {
    throw ValidationError("negative binomial p must lie in (0, 1), got " +
                          std::to_string(nb.success_prob));
  }
}

void validate(const ZetaLaw& z) {
  if (!(z.exponent > 3.0)) {
    throw ValidationError("zeta exponent must satisfy s > 3 for finite variance, got " +
                          std::to_string(z.exponent));
  }
}

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
         std::lgamma(static_cast<double>(n - k + 1));
}

}  // namespace

std::string_view kind_name(CountingKind kind) {
  switch (kind) {
    case CountingKind::Dirac:
      return "dirac";
    case CountingKind::Binomial:
      return "binomial";
    case CountingKind::Poisson:
      return "poisson";
    case CountingKind::OrthogonalDie:
      return "orthogonal_die";
    case CountingKind::NegativeBinomial:
      return "negative_binomial";
    case CountingKind::Zeta:
      return "zeta";
  }
  return "unknown";
}

CountingMeasure::CountingMeasure(CountingLaw law) : law_(std::move(law)) {
  std::visit([](const auto& l) { validate(l); }, law_);
  if (const auto* z = std::get_if<ZetaLaw>(&law_)) {
    const double s = z->exponent;
    zeta_s_ = riemann_zeta(s);
    zeta_s1_ = riemann_zeta(s - 1.0);
    zeta_s2_ = riemann_zeta(s - 2.0);
    // Integral tail bound: P(K > M) <= M^{1-s} / ((s-1) zeta(s)).
    const double cap = std::pow(1e-13 * (s - 1.0) * zeta_s_, -1.0 / (s - 1.0));
    zeta_cap_ = static_cast<std::int64_t>(std::ceil(cap)) + 1;
  }
}

CountingMeasure CountingMeasure::dirac(std::int64_t count) {
  return CountingMeasure(DiracLaw{count});
}
CountingMeasure CountingMeasure::binomial(std::int64_t trials, double success_prob) {
  return CountingMeasure(BinomialLaw{trials, success_prob});
}
CountingMeasure CountingMeasure::poisson(double mean) {
  return CountingMeasure(PoissonLaw{mean});
}
CountingMeasure CountingMeasure::orthogonal_die(std::int64_t lo, std::int64_t hi) {
  return CountingMeasure(OrthogonalDieLaw{lo, hi});
}
CountingMeasure CountingMeasure::negative_binomial(double successes, double success_prob) {
  return CountingMeasure(NegativeBinomialLaw{successes, success_prob});
}
CountingMeasure CountingMeasure::zeta(double exponent) {
  return CountingMeasure(ZetaLaw{exponent});
}

CountingKind CountingMeasure::kind() const noexcept {
  return static_cast<CountingKind>(law_.index());
}

double CountingMeasure::mean() const {
  return std::visit(
      Overload{
          [](const DiracLaw& d) { return static_cast<double>(d.count); },
          [](const BinomialLaw& b) { return static_cast<double>(b.trials) * b.success_prob; },
          [](const PoissonLaw& p) { return p.mean; },
          [](const OrthogonalDieLaw& d) { return static_cast<double>(d.lo + d.hi) / 2.0; },
          [](const NegativeBinomialLaw& nb) {
            return nb.successes * nb.success_prob / (1.0 - nb.success_prob);
          },
          [this](const ZetaLaw&) { return zeta_s1_ / zeta_s_; },
      },
      law_);
}

double CountingMeasure::variance() const {
  return std::visit(
      Overload{
          [](const DiracLaw&) { return 0.0; },
          [](const BinomialLaw& b) {
            return static_cast<double>(b.trials) * b.success_prob * (1.0 - b.success_prob);
          },
          [](const PoissonLaw& p) { return p.mean; },
          [](const OrthogonalDieLaw& d) {
            const double span1 = static_cast<double>(d.hi - d.lo + 1);
            return (span1 * span1 - 1.0) / 12.0;
          },
          [](const NegativeBinomialLaw& nb) {
            const double q = 1.0 - nb.success_prob;
            return nb.successes * nb.success_prob / (q * q);
          },
          [this](const ZetaLaw&) {
            const double m = zeta_s1_ / zeta_s_;
            return zeta_s2_ / zeta_s_ - m * m;
          },
      },
      law_);
}

bool CountingMeasure::is_orthogonal() const {
  switch (kind()) {
    case CountingKind::Poisson:
    case CountingKind::OrthogonalDie:
      return true;
    default:
      return std::abs(defect()) < kOrthogonalTol;
  }
}

double CountingMeasure::pmf(std::int64_t k) const {
  if (k < support_min()) return 0.0;
  return std::visit(
      Overload{
          [k](const DiracLaw& d) { return k == d.count ? 1.0 : 0.0; },
          [k](const BinomialLaw& b) {
            if (k > b.trials) return 0.0;
            const double p = b.success_prob;
            if (p == 0.0) return k == 0 ? 1.0 : 0.0;
            if (p == 1.0) return k == b.trials ? 1.0 : 0.0;
            const double lp = log_choose(b.trials, k) + static_cast<double>(k) * std::log(p) +
                              static_cast<double>(b.trials - k) * std::log1p(-p);
            return std::exp(lp);
          },
          [k](const PoissonLaw& p) {
            const double dk = static_cast<double>(k);
            return std::exp(dk * std::log(p.mean) - p.mean - std::lgamma(dk + 1.0));
          },
          [k](const OrthogonalDieLaw& d) {
            if (k > d.hi) return 0.0;
            return 1.0 / static_cast<double>(d.hi - d.lo + 1);
          },
          [k](const NegativeBinomialLaw& nb) {
            const double dk = static_cast<double>(k);
            const double lp = std::lgamma(nb.successes + dk) - std::lgamma(nb.successes) -
                              std::lgamma(dk + 1.0) + nb.successes * std::log1p(-nb.success_prob) +
                              dk * std::log(nb.success_prob);
            return std::exp(lp);
          },
          [k, this](const ZetaLaw& z) {
            return std::pow(static_cast<double>(k), -z.exponent) / zeta_s_;
          },
      },
      law_);
}

std::int64_t CountingMeasure::support_min() const {
  return std::visit(Overload{
                        [](const DiracLaw& d) { return d.count; },
                        [](const BinomialLaw&) { return std::int64_t{0}; },
                        [](const PoissonLaw&) { return std::int64_t{0}; },
                        [](const OrthogonalDieLaw& d) { return d.lo; },
                        [](const NegativeBinomialLaw&) { return std::int64_t{0}; },
                        [](const ZetaLaw&) { return std::int64_t{1}; },
                    },
                    law_);
}

bool CountingMeasure::bounded_support() const {
  switch (kind()) {
    case CountingKind::Dirac:
    case CountingKind::Binomial:
    case CountingKind::OrthogonalDie:
      return true;
    default:
      return false;
  }
}

std::int64_t CountingMeasure::support_max(double tail_mass) const {
  switch (kind()) {
    case CountingKind::Dirac:
      return std::get<DiracLaw>(law_).count;
    case CountingKind::Binomial:
      return std::get<BinomialLaw>(law_).trials;
    case CountingKind::OrthogonalDie:
      return std::get<OrthogonalDieLaw>(law_).hi;
    case CountingKind::Zeta: {
      if (!(tail_mass > 0.0)) {
        throw ValidationError("support_max of an unbounded law needs tail_mass > 0");
      }
      const double s = std::get<ZetaLaw>(law_).exponent;
      const double cap = std::pow(tail_mass * (s - 1.0) * zeta_s_, -1.0 / (s - 1.0));
      return static_cast<std::int64_t>(std::ceil(cap)) + 1;
    }
    default: {
      if (!(tail_mass > 0.0)) {
        throw ValidationError("support_max of an unbounded law needs tail_mass > 0");
      }
      double cum = 0.0;
      for (std::int64_t k = support_min();; ++k) {
        cum += pmf(k);
        if (cum >= 1.0 - tail_mass) return k;
      }
    }
  }
}

std::int64_t CountingMeasure::sample(RandomSource& rng) const {
  return std::visit(
      Overload{
          [](const DiracLaw& d) { return d.count; },
          [&rng](const BinomialLaw& b) {
            std::binomial_distribution<std::int64_t> dist(b.trials, b.success_prob);
            return dist(rng);
          },
          [&rng](const PoissonLaw& p) {
            std::poisson_distribution<std::int64_t> dist(p.mean);
            return dist(rng);
          },
          [&rng](const OrthogonalDieLaw& d) {
            std::uniform_int_distribution<std::int64_t> dist(d.lo, d.hi);
            return dist(rng);
          },
          [&rng](const NegativeBinomialLaw& nb) {
            // Gamma-Poisson mixture, valid for non-integer r.
            const double scale = nb.success_prob / (1.0 - nb.success_prob);
            std::gamma_distribution<double> gamma(nb.successes, scale);
            const double lambda = gamma(rng);
            if (!(lambda > 0.0)) return std::int64_t{0};
            std::poisson_distribution<std::int64_t> dist(lambda);
            return dist(rng);
          },
          [&rng, this](const ZetaLaw&) {
            // Inverse-CDF walk over the truncated pmf. The mean is small for
            // every admissible s, so the expected number of steps is tiny.
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const double u = unif(rng);
            double cum = 0.0;
            for (std::int64_t k = 1; k < zeta_cap_; ++k) {
              cum += pmf(k);
              if (u < cum) return k;
            }
            return zeta_cap_;
          },
      },
      law_);
}

std::vector<std::pair<std::int64_t, std::int64_t>> orthogonal_die_pairs(std::int64_t max_span) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t d = 4; d <= max_span; ++d) {
    if ((d * (d - 4)) % 12 == 0) {
      const std::int64_t m = d * (d - 4) / 12;
      pairs.emplace_back(m, m + d);
    }
  }
  return pairs;
}

}  // namespace rmsa
