#include "ocen/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ocen {
namespace {

void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw std::invalid_argument("dimensionality mismatch: model expects " +
                                std::to_string(expected) + ", got " +
                                std::to_string(got));
  }
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<std::vector<double>> copy_points(const PositivesView& view) {
  std::vector<std::vector<double>> pts;
  pts.reserve(view.size());
  for (std::size_t i = 0; i < view.size(); ++i) pts.push_back(view.row(i));
  return pts;
}

// Mean distance from x to its k nearest points among pts, optionally skipping
// one index (the point itself during fitting).
double mean_knn_distance(const std::vector<double>& x,
                         const std::vector<std::vector<double>>& pts, std::size_t k,
                         std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<double> d;
  d.reserve(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == skip) continue;
    d.push_back(euclidean(x, pts[j]));
  }
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
  return std::accumulate(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), 0.0) /
         static_cast<double>(k);
}

double psi_mean(PsiMean psi, const std::vector<double>& values) {
  const double k = static_cast<double>(values.size());
  if (psi == PsiMean::harmonic) {
    double inv = 0.0;
    for (double v : values) inv += 1.0 / v;
    return k / inv;
  }
  double lg = 0.0;
  for (double v : values) lg += std::log(v);
  return std::exp(lg / k);
}

std::size_t bin_of(double x, std::size_t bins) {
  const double scaled = x * static_cast<double>(bins);
  auto b = static_cast<long long>(std::floor(scaled));
  if (b < 0) b = 0;
  if (b >= static_cast<long long>(bins)) b = static_cast<long long>(bins) - 1;
  return static_cast<std::size_t>(b);
}

double density_raw(const detail::DensityState& st, const std::vector<double>& x) {
  std::vector<double> per_feature(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    per_feature[j] = st.bin_mass[j][bin_of(x[j], st.bins)];
  }
  return psi_mean(st.psi, per_feature);
}

double svm_g(const detail::SvmState& st, const std::vector<double>& x) {
  double g = 0.0;
  for (std::size_t i = 0; i < st.support.size(); ++i) {
    g += st.alpha[i] * detail::kernel_eval(st.kernel, st.degree, st.support[i], x);
  }
  return g - st.rho;
}

}  // namespace

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::pga: return "pga";
    case Algo::gde: return "gde";
    case Algo::density_agg: return "density_agg";
    case Algo::ocsvm: return "ocsvm";
  }
  throw std::invalid_argument("unknown algorithm tag");
}

Algo algo_from_name(const std::string& name) {
  if (name == "pga") return Algo::pga;
  if (name == "gde") return Algo::gde;
  if (name == "density_agg") return Algo::density_agg;
  if (name == "ocsvm") return Algo::ocsvm;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void ClassifierSpec::validate() const {
  switch (algo) {
    case Algo::pga:
      if (!(p_alpha > 0.0 && p_alpha < 1.0)) {
        throw std::invalid_argument("pga: p_alpha must be in (0,1)");
      }
      if (k_nn < 1) throw std::invalid_argument("pga: k_nn must be >= 1");
      break;
    case Algo::gde:
      break;
    case Algo::density_agg:
      if (!(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument("density_agg: s must be in (0,1)");
      }
      break;
    case Algo::ocsvm:
      if (!(nu > 0.0 && nu <= 1.0)) {
        throw std::invalid_argument("ocsvm: nu must be in (0,1]");
      }
      if (kernel == KernelKind::polynomial && degree < 2) {
        throw std::invalid_argument("ocsvm: polynomial degree must be >= 2");
      }
      break;
  }
}

namespace detail {
double kernel_eval(KernelKind k, int degree, const std::vector<double>& a,
                   const std::vector<double>& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  if (k == KernelKind::linear) return dot;
  return std::pow(dot + 1.0, degree);
}
}  // namespace detail

std::size_t TrainedClassifier::dim() const {
  return std::visit(
      [](const auto& st) -> std::size_t {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, detail::PgaState>) return st.points[0].size();
        if constexpr (std::is_same_v<T, detail::GdeState>) return st.points[0].size();
        if constexpr (std::is_same_v<T, detail::DensityState>) return st.bin_mass.size();
        if constexpr (std::is_same_v<T, detail::SvmState>) return st.support[0].size();
      },
      state_);
}

Score TrainedClassifier::score(const std::vector<double>& x) const {
  require_dim(dim(), x.size());
  double value = 0.0;
  if (const auto* pga = std::get_if<detail::PgaState>(&state_)) {
    const double dx =
        mean_knn_distance(x, pga->points, static_cast<std::size_t>(pga->k_nn));
    // Strict ECDF: the fraction of training distances below d_x.
    const auto below = std::lower_bound(pga->sorted_d.begin(), pga->sorted_d.end(), dx) -
                       pga->sorted_d.begin();
    value = 1.0 - static_cast<double>(below) / static_cast<double>(pga->sorted_d.size());
  } else if (const auto* gde = std::get_if<detail::GdeState>(&state_)) {
    double count = 0.0;
    for (const auto& p : gde->points) {
      if (euclidean(x, p) <= gde->r) count += 1.0;
    }
    if (gde->sd_count == 0.0) {
      // Degenerate training counts: any comparable neighborhood is normal.
      value = count >= gde->mean_count - 1.0 ? 1.0 : 0.0;
    } else {
      const double z = (count - gde->mean_count) / gde->sd_count;
      value = std::exp(-z * z);
    }
  } else if (const auto* den = std::get_if<detail::DensityState>(&state_)) {
    value = std::min(density_raw(*den, x) / den->max_raw, 1.0);
  } else {
    const auto& svm = std::get<detail::SvmState>(state_);
    value = 1.0 / (1.0 + std::exp(-svm_g(svm, x) / svm.sigma_g));
  }
  return {std::clamp(value, 0.0, 1.0)};
}

TrainedClassifier train_pga(const PositivesView& positives, double p_alpha, int k_nn) {
  if (positives.size() < 2) throw std::invalid_argument("pga requires >= 2 positives");
  if (!(p_alpha > 0.0 && p_alpha < 1.0)) {
    throw std::invalid_argument("pga: p_alpha must be in (0,1)");
  }
  if (k_nn < 1) throw std::invalid_argument("pga: k_nn must be >= 1");
  detail::PgaState st;
  st.points = copy_points(positives);
  st.k_nn = std::min<int>(k_nn, static_cast<int>(st.points.size()) - 1);
  st.sorted_d.resize(st.points.size());
  for (std::size_t i = 0; i < st.points.size(); ++i) {
    st.sorted_d[i] = mean_knn_distance(st.points[i], st.points,
                                       static_cast<std::size_t>(st.k_nn), i);
  }
  std::sort(st.sorted_d.begin(), st.sorted_d.end());
  return {Algo::pga, "pga", p_alpha, std::move(st)};
}

TrainedClassifier train_gde(const PositivesView& positives) {
  if (positives.size() < 2) throw std::invalid_argument("gde requires >= 2 positives");
  detail::GdeState st;
  st.points = copy_points(positives);
  const std::size_t n = st.points.size();

  double mean_nn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_nn += mean_knn_distance(st.points[i], st.points, 1, i);
  }
  mean_nn /= static_cast<double>(n);
  st.r = 2.0 * mean_nn;

  // Neighborhood counts at radius r, excluding the point itself.
  std::vector<double> counts(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && euclidean(st.points[i], st.points[j]) <= st.r) counts[i] += 1.0;
    }
  }
  st.mean_count = std::accumulate(counts.begin(), counts.end(), 0.0) /
                  static_cast<double>(n);
  double ss = 0.0;
  for (double c : counts) ss += (c - st.mean_count) * (c - st.mean_count);
  st.sd_count = std::sqrt(ss / static_cast<double>(n - 1));
  return {Algo::gde, "gde", 0.5, std::move(st)};
}

TrainedClassifier train_density_agg(const PositivesView& positives, PsiMean psi,
                                    double s) {
  if (positives.size() < 2) {
    throw std::invalid_argument("density_agg requires >= 2 positives");
  }
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("density_agg: s must be in (0,1)");
  }
  const std::size_t n = positives.size();
  const std::size_t dim = positives.dim();
  detail::DensityState st;
  st.psi = psi;
  st.s = s;
  st.bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));

  // Equal-width histogram over [0,1] per feature; s*n pseudo-counts spread
  // uniformly over the bins keep every mass strictly positive.
  const double nd = static_cast<double>(n);
  const double pseudo = s * nd / static_cast<double>(st.bins);
  st.bin_mass.assign(dim, std::vector<double>(st.bins, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = positives.row(i);
    for (std::size_t j = 0; j < dim; ++j) {
      st.bin_mass[j][bin_of(row[j], st.bins)] += 1.0;
    }
  }
  for (auto& feature : st.bin_mass) {
    for (double& mass : feature) mass = (mass + pseudo) / (nd * (1.0 + s));
  }

  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = density_raw(st, positives.row(i));
  st.max_raw = *std::max_element(raw.begin(), raw.end());

  // Threshold at the empirical s-quantile of the fitted training scores.
  std::vector<double> train_scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    train_scores[i] = std::min(raw[i] / st.max_raw, 1.0);
  }
  std::sort(train_scores.begin(), train_scores.end());
  const std::size_t q = std::min(
      static_cast<std::size_t>(std::ceil(s * nd)), n - 1);
  const double theta = train_scores[q];
  return {Algo::density_agg, "density_agg", theta, std::move(st)};
}

TrainedClassifier train_ocsvm(const PositivesView& positives, KernelKind kernel,
                              int degree, double nu, SvmIterateAudit audit) {
  const std::size_t n = positives.size();
  if (n < 2) throw std::invalid_argument("ocsvm requires >= 2 positives");
  if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("ocsvm: nu must be in (0,1]");
  if (kernel == KernelKind::polynomial && degree < 2) {
    throw std::invalid_argument("ocsvm: polynomial degree must be >= 2");
  }

  const auto points = copy_points(positives);
  std::vector<std::vector<double>> K(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      K[i][j] = K[j][i] = detail::kernel_eval(kernel, degree, points[i], points[j]);
    }
  }

  // Dual: min (1/2) a^T K a, 0 <= a_i <= C, sum a = 1. Sequential fill gives a
  // feasible start; maximal-violating-pair updates preserve feasibility.
  const double C = 1.0 / (nu * static_cast<double>(n));
  std::vector<double> alpha(n, 0.0);
  double remaining = 1.0;
  for (std::size_t i = 0; i < n && remaining > 0.0; ++i) {
    alpha[i] = std::min(C, remaining);
    remaining -= alpha[i];
  }
  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) grad[i] += K[i][j] * alpha[j];
  }

  constexpr double kTol = 1e-3;
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-12;
  bool converged = false;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    // i: steepest ascent gradient among weights that can shrink;
    // j: steepest descent gradient among weights that can grow.
    std::size_t bi = n, bj = n;
    double gi = -std::numeric_limits<double>::infinity();
    double gj = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] > kEps && grad[t] > gi) {
        gi = grad[t];
        bi = t;
      }
      if (alpha[t] < C - kEps && grad[t] < gj) {
        gj = grad[t];
        bj = t;
      }
    }
    if (bi == n || bj == n || gi - gj <= kTol) {
      converged = true;
      break;
    }
    const double eta = K[bi][bi] + K[bj][bj] - 2.0 * K[bi][bj];
    double delta = eta > 0.0 ? (gi - gj) / eta
                             : std::numeric_limits<double>::infinity();
    delta = std::min({delta, alpha[bi], C - alpha[bj]});
    alpha[bi] -= delta;
    alpha[bj] += delta;
    for (std::size_t t = 0; t < n; ++t) grad[t] += delta * (K[t][bj] - K[t][bi]);
    if (audit != nullptr) audit(alpha, C);
  }

  // rho from unbounded support vectors (interior KKT: grad = rho); fall back
  // to all support vectors when every weight sits on the box.
  double rho = 0.0;
  std::size_t n_rho = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > kEps && alpha[t] < C - kEps) {
      rho += grad[t];
      ++n_rho;
    }
  }
  if (n_rho == 0) {
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] > kEps) {
        rho += grad[t];
        ++n_rho;
      }
    }
  }
  rho /= static_cast<double>(n_rho);

  detail::SvmState st;
  st.kernel = kernel;
  st.degree = degree;
  st.nu = nu;
  st.rho = rho;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > kEps) {
      st.support.push_back(points[t]);
      st.alpha.push_back(alpha[t]);
    }
  }

  // Scale for the logistic squashing: sample standard deviation of g over the
  // training points (g(x_i) = grad_i - rho), 1 when degenerate.
  double g_mean = 0.0;
  std::vector<double> g(n);
  for (std::size_t t = 0; t < n; ++t) {
    g[t] = grad[t] - rho;
    g_mean += g[t];
  }
  g_mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : g) ss += (v - g_mean) * (v - g_mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  st.sigma_g = sd > 0.0 ? sd : 1.0;

  return {Algo::ocsvm, "ocsvm", 0.5, std::move(st), !converged};
}

TrainedClassifier train(const ClassifierSpec& spec, const PositivesView& positives) {
  spec.validate();
  TrainedClassifier model;
  switch (spec.algo) {
    case Algo::pga:
      model = train_pga(positives, spec.p_alpha, spec.k_nn);
      break;
    case Algo::gde:
      model = train_gde(positives);
      break;
    case Algo::density_agg:
      model = train_density_agg(positives, spec.psi, spec.s);
      break;
    case Algo::ocsvm:
      model = train_ocsvm(positives, spec.kernel, spec.degree, spec.nu);
      break;
  }
  return {model.algo(), spec.display_name(), model.theta().theta, model.state(),
          model.convergence_warning()};
}

double ocsvm_dual_objective(const TrainedClassifier& model) {
  const auto& st = std::get<detail::SvmState>(model.state());
  double obj = 0.0;
  for (std::size_t i = 0; i < st.support.size(); ++i) {
    for (std::size_t j = 0; j < st.support.size(); ++j) {
      obj += st.alpha[i] * st.alpha[j] *
             detail::kernel_eval(st.kernel, st.degree, st.support[i], st.support[j]);
    }
  }
  return 0.5 * obj;
}

}  // namespace ocen
