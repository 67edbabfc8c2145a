#include "sosgap/solver/admm.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "sosgap/error.hpp"
#include "sosgap/kernels/kernels.hpp"
#include "sosgap/solver/anderson.hpp"
#include "sosgap/sdp/svec.hpp"
#include "sosgap/solver/cones.hpp"

namespace sosgap {

void SolverSettings::validate() const {
  if (!(eps > 0.0)) throw InputError("solver settings: eps must be positive");
  if (!(alpha > 0.0 && alpha < 2.0)) throw InputError("solver settings: alpha must lie in (0, 2)");
  if (max_iters < 1) throw InputError("solver settings: max_iters must be at least 1");
  if (!(scale > 0.0)) throw InputError("solver settings: scale must be positive");
  if (!(rho_x > 0.0)) throw InputError("solver settings: rho_x must be positive");
  if (check_interval < 1) throw InputError("solver settings: check_interval must be at least 1");
  if (stall_window < 1 || !(stall_factor > 1.0)) throw InputError("solver settings: bad stall window");
  if (acceleration_memory > 100) throw InputError("solver settings: acceleration_memory must be at most 100");
  if (equilibration_passes < 0) throw InputError("solver settings: negative equilibration passes");
}

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Optimal: return "optimal";
    case SolverStatus::IterationLimit: return "iteration_limit";
    case SolverStatus::Stalled: return "stalled";
    case SolverStatus::InfeasibleCertificate: return "infeasible";
    case SolverStatus::UnboundedCertificate: return "unbounded";
  }
  return "unknown";
}

SolverStatus status_from_string(const std::string& s) {
  for (const auto st : {SolverStatus::Optimal, SolverStatus::IterationLimit, SolverStatus::Stalled,
                        SolverStatus::InfeasibleCertificate, SolverStatus::UnboundedCertificate}) {
    if (to_string(st) == s) return st;
  }
  throw InputError("unknown solver status '" + s + "'");
}

double Residuals::worst() const { return std::max({primal, dual, gap}); }

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Vec = Eigen::VectorXd;

constexpr double kMinScale = 1e-6;
constexpr double kMaxScale = 1e6;
constexpr double kZeroConeWeight = 1e-3;  // dual steps on equality rows are 1000x longer
constexpr std::size_t kMinItersBetweenRescale = 100;
constexpr double kEpsInfeasible = 1e-7;

SpMat to_sparse(const ConicProgram& p) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(p.a.size());
  for (const auto& e : p.a) t.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  SpMat a(static_cast<Eigen::Index>(p.rows), static_cast<Eigen::Index>(p.cols));
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  return a;
}

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : kernels::norm_inf({v.data(), static_cast<std::size_t>(v.size())}); }

double dot(const Vec& a, const Vec& b) {
  return kernels::dot({a.data(), static_cast<std::size_t>(a.size())}, {b.data(), static_cast<std::size_t>(b.size())});
}

// Ruiz equilibration: a <- diag(d) a diag(e), with d constant on each PSD
// block so that the cone is preserved.
void equilibrate(SpMat& a, const ConeLayout& cones, int passes, Vec& d, Vec& e) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  d = Vec::Ones(m);
  e = Vec::Ones(n);
  const auto clamp_factor = [](double norm) {
    if (!(norm > 0.0)) return 1.0;
    return std::clamp(1.0 / std::sqrt(norm), 1e-4, 1e4);
  };
  for (int pass = 0; pass < passes; ++pass) {
    Vec row_norm = Vec::Zero(m);
    Vec col_norm = Vec::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (SpMat::InnerIterator it(a, j); it; ++it) {
        const double v = std::fabs(it.value());
        row_norm[it.row()] = std::max(row_norm[it.row()], v);
        col_norm[j] = std::max(col_norm[j], v);
      }
    }
    auto offset = static_cast<Eigen::Index>(cones.psd_offset());
    for (const std::size_t side : cones.psd) {
      const auto len = static_cast<Eigen::Index>(svec_length(side));
      const double block_max = row_norm.segment(offset, len).maxCoeff();
      row_norm.segment(offset, len).setConstant(block_max);
      offset += len;
    }
    Vec df(m);
    Vec ef(n);
    for (Eigen::Index i = 0; i < m; ++i) df[i] = clamp_factor(row_norm[i]);
    for (Eigen::Index j = 0; j < n; ++j) ef[j] = clamp_factor(col_norm[j]);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (SpMat::InnerIterator it(a, j); it; ++it) it.valueRef() *= df[it.row()] * ef[j];
    }
    d.array() *= df.array();
    e.array() *= ef.array();
  }
}

class Admm {
 public:
  Admm(const ConicProgram& p, const SolverSettings& s) : prog_(p), set_(s) {
    n_ = static_cast<Eigen::Index>(p.cols);
    m_ = static_cast<Eigen::Index>(p.rows);
    a_orig_ = to_sparse(p);
    a_ = a_orig_;
    equilibrate(a_, p.cones, s.equilibration_passes, d_, e_);
    b_ = Eigen::Map<const Vec>(p.b.data(), m_).cwiseProduct(d_);
    c_ = Eigen::Map<const Vec>(p.c.data(), n_).cwiseProduct(e_);
    sb_ = 1.0 / std::clamp(inf_norm(b_), 1e-4, 1e4);
    sc_ = 1.0 / std::clamp(inf_norm(c_), 1e-4, 1e4);
    b_ *= sb_;
    c_ *= sc_;
    scale_ = s.scale;
    build_kkt();
    refactor();
  }

  SolverResult run(const SolverState* warm, const IterationCallback& on_check) {
    const Eigen::Index len = n_ + m_ + 1;
    w_ = Vec::Zero(len);
    w_[len - 1] = 1.0;
    if (warm != nullptr) warm_start(*warm);
    ut_.resize(len);
    u_.resize(len);
    v_.resize(len);
    SolverResult result;
    result.eps = set_.eps;
    result.status = SolverStatus::IterationLimit;
    std::size_t last_rescale = 0;
    double sum_log_ratio = 0.0;
    int n_log_ratio = 0;
    std::vector<double>& history = result.state.residual_history;

    Anderson aa(len, set_.acceleration_memory);
    Vec f(len);
    Vec g(len);
    for (std::size_t k = 1; k <= set_.max_iters; ++k) {
      project_linear();
      project_cone();
      // f = w + alpha (u - u~), the plain Douglas-Rachford update.
      f = w_;
      const auto nlen = static_cast<std::size_t>(len);
      kernels::axpy(set_.alpha, {u_.data(), nlen}, {f.data(), nlen});
      kernels::axpy(-set_.alpha, {ut_.data(), nlen}, {f.data(), nlen});
      g = w_ - f;
      if (aa.accelerated() && g.norm() > aa.last_residual_norm()) {
        w_ = aa.fallback();
        aa.reset();
        ++result.rejected_accelerations;
        continue;
      }
      const bool check = k == 1 || k % set_.check_interval == 0 || k == set_.max_iters;
      if (check) {
        compute_v();
        const Snapshot snap = snapshot();
        result.iterations = k;
        result.residuals = snap.res;
        result.primal_objective = snap.pobj;
        result.dual_objective = snap.dobj;
        history.push_back(snap.res.worst());
        if (on_check) on_check({k, snap.res, snap.pobj, snap.dobj, scale_});
        store_state(result.state);
        if (snap.res.worst() <= set_.eps) {
          result.status = SolverStatus::Optimal;
          break;
        }
        if (const auto cert = infeasibility()) {
          result.status = *cert;
          break;
        }
        if (stalled(history)) {
          result.status = SolverStatus::Stalled;
          break;
        }
        if (set_.adaptive_scale) {
          sum_log_ratio += std::log(snap.rel_pri) - std::log(snap.rel_dual);
          ++n_log_ratio;
          const double factor = std::sqrt(std::exp(sum_log_ratio / n_log_ratio));
          const double new_scale = std::clamp(scale_ * factor, kMinScale, kMaxScale);
          if (k - last_rescale >= kMinItersBetweenRescale && new_scale != scale_ &&
              (factor > std::sqrt(10.0) || factor < 1.0 / std::sqrt(10.0))) {
            rescale(new_scale);
            aa.reset();
            ++result.refactorizations;
            last_rescale = k;
            sum_log_ratio = 0.0;
            n_log_ratio = 0;
            continue;  // w was rebuilt from (u, v)
          }
        }
      }
      w_ = aa.step(w_, f, g);
    }
    result.state.iterations = result.iterations;
    return result;
  }

 private:
  struct Snapshot {
    Residuals res;
    double pobj;
    double dobj;
    double rel_pri;
    double rel_dual;
  };

  double r_y(Eigen::Index i) const {
    return static_cast<std::size_t>(i) < prog_.cones.zero ? kZeroConeWeight / scale_ : 1.0 / scale_;
  }

  void build_kkt() {
    const Eigen::Index dim = n_ + m_;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(a_.nonZeros() + dim));
    for (Eigen::Index j = 0; j < n_; ++j) t.emplace_back(j, j, set_.rho_x);
    for (Eigen::Index i = 0; i < m_; ++i) t.emplace_back(n_ + i, n_ + i, -1.0);
    for (Eigen::Index j = 0; j < n_; ++j) {
      for (SpMat::InnerIterator it(a_, j); it; ++it) t.emplace_back(n_ + it.row(), j, it.value());
    }
    kkt_.resize(dim, dim);
    kkt_.setFromTriplets(t.begin(), t.end());
    kkt_.makeCompressed();
    diag_pos_.resize(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
      // Lower-triangular storage: the diagonal is the first entry of column j.
      const int start = kkt_.outerIndexPtr()[j];
      if (kkt_.innerIndexPtr()[start] != j) throw NumericalError("KKT assembly: missing diagonal");
      diag_pos_[static_cast<std::size_t>(j)] = start;
    }
    ldlt_.analyzePattern(kkt_);
  }

  void refactor() {
    double* values = kkt_.valuePtr();
    for (Eigen::Index i = 0; i < m_; ++i) values[diag_pos_[static_cast<std::size_t>(n_ + i)]] = -r_y(i);
    ldlt_.factorize(kkt_);
    if (ldlt_.info() != Eigen::Success) throw NumericalError("KKT factorization failed");
    // p = K^-1 h with h = (c, b).
    Vec h(n_ + m_);
    h << c_, -b_;
    p_ = ldlt_.solve(h);
    if (ldlt_.info() != Eigen::Success || !p_.allFinite()) throw NumericalError("KKT solve failed");
    h_dot_p_ = c_.dot(p_.head(n_)) + b_.dot(p_.tail(m_));
  }

  // u~ = (R + M)^-1 R w
  void project_linear() {
    Vec rhs(n_ + m_);
    rhs.head(n_) = set_.rho_x * w_.head(n_);
    for (Eigen::Index i = 0; i < m_; ++i) rhs[n_ + i] = -r_y(i) * w_[n_ + i];
    const double r_tau = w_[n_ + m_];
    Vec z = ldlt_.solve(rhs);
    const double tau = (r_tau + c_.dot(z.head(n_)) + b_.dot(z.tail(m_))) / (1.0 + h_dot_p_);
    ut_.head(n_ + m_) = z - tau * p_;
    ut_[n_ + m_] = tau;
  }

  // u = Pi_C(2 u~ - w)
  void project_cone() {
    u_ = 2.0 * ut_ - w_;
    sosgap::project_cone(prog_.cones, {u_.data() + n_, static_cast<std::size_t>(m_)}, false, psd_);
    u_[n_ + m_] = std::max(u_[n_ + m_], 0.0);
  }

  // v = R (u + w - 2 u~), the dual slack of the embedding.
  void compute_v() {
    v_ = u_ + w_ - 2.0 * ut_;
    v_.head(n_) *= set_.rho_x;
    for (Eigen::Index i = 0; i < m_; ++i) v_[n_ + i] *= r_y(i);
  }

  void rescale(double new_scale) {
    scale_ = new_scale;
    refactor();
    // w = u + R^-1 v with the new R.
    w_.head(n_) = u_.head(n_) + v_.head(n_) / set_.rho_x;
    for (Eigen::Index i = 0; i < m_; ++i) w_[n_ + i] = u_[n_ + i] + v_[n_ + i] / r_y(i);
    w_[n_ + m_] = u_[n_ + m_] + v_[n_ + m_];
  }

  void warm_start(const SolverState& st) {
    if (st.x.size() != prog_.cols || st.y.size() != prog_.rows || st.s.size() != prog_.rows) {
      throw InputError("warm start: state dimensions do not match the program");
    }
    for (Eigen::Index j = 0; j < n_; ++j) w_[j] = sb_ * st.x[static_cast<std::size_t>(j)] / e_[j];
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double y = sc_ * st.y[static_cast<std::size_t>(i)] / d_[i];
      const double s = sb_ * st.s[static_cast<std::size_t>(i)] * d_[i];
      w_[n_ + i] = y + s / r_y(i);
    }
    w_[n_ + m_] = 1.0;
  }

  void unscale(double tau, Vec& x, Vec& y, Vec& s) const {
    x = e_.cwiseProduct(u_.head(n_)) / (sb_ * tau);
    y = d_.cwiseProduct(u_.segment(n_, m_)) / (sc_ * tau);
    s = v_.segment(n_, m_).cwiseQuotient(d_) / (sb_ * tau);
  }

  Snapshot snapshot() {
    Snapshot snap{};
    const double tau = u_[n_ + m_];
    // Relative residuals in the scaled embedding, for scale adaptation.
    {
      const Vec ax = a_ * u_.head(n_);
      const Vec pr = ax + v_.segment(n_, m_) - b_ * tau;
      const Vec aty = a_.transpose() * u_.segment(n_, m_);
      const Vec dr = aty + c_ * tau;
      const double tiny = 1e-18;
      snap.rel_pri = std::max(inf_norm(pr), tiny) /
                     std::max({inf_norm(ax), inf_norm(v_.segment(n_, m_)), std::fabs(tau) * inf_norm(b_), tiny});
      snap.rel_dual = std::max(inf_norm(dr), tiny) / std::max({inf_norm(aty), std::fabs(tau) * inf_norm(c_), tiny});
    }
    if (!(tau > 0.0)) {
      const double inf = std::numeric_limits<double>::infinity();
      snap.res = {inf, inf, inf};
      snap.pobj = snap.dobj = std::numeric_limits<double>::quiet_NaN();
      return snap;
    }
    unscale(tau, x_, y_, s_);
    snap.res = evaluate(x_, y_, s_, snap.pobj, snap.dobj);
    return snap;
  }

  Residuals evaluate(const Vec& x, const Vec& y, const Vec& s, double& pobj, double& dobj) const {
    const Eigen::Map<const Vec> b(prog_.b.data(), m_);
    const Eigen::Map<const Vec> c(prog_.c.data(), n_);
    const Vec ax = a_orig_ * x;
    const Vec aty = a_orig_.transpose() * y;
    Residuals r;
    r.primal = inf_norm(ax + s - b) / (1.0 + std::max({inf_norm(ax), inf_norm(s), inf_norm(b)}));
    r.dual = inf_norm(aty + c) / (1.0 + std::max(inf_norm(aty), inf_norm(c)));
    pobj = dot(c, x);
    dobj = -dot(b, y);
    r.gap = std::fabs(pobj - dobj) / (1.0 + std::max(std::fabs(pobj), std::fabs(dobj)));
    return r;
  }

  std::optional<SolverStatus> infeasibility() const {
    const Eigen::Map<const Vec> b(prog_.b.data(), m_);
    const Eigen::Map<const Vec> c(prog_.c.data(), n_);
    const Vec y = d_.cwiseProduct(u_.segment(n_, m_)) / sc_;
    const double bty = dot(b, y);
    if (bty < 0.0) {
      const Vec aty = a_orig_.transpose() * y;
      if (inf_norm(aty) <= kEpsInfeasible * -bty) return SolverStatus::InfeasibleCertificate;
    }
    const Vec x = e_.cwiseProduct(u_.head(n_)) / sb_;
    const double ctx = dot(c, x);
    if (ctx < 0.0) {
      const Vec s = v_.segment(n_, m_).cwiseQuotient(d_) / sb_;
      const Vec axs = a_orig_ * x + s;
      if (inf_norm(axs) <= kEpsInfeasible * -ctx) return SolverStatus::UnboundedCertificate;
    }
    return std::nullopt;
  }

  bool stalled(const std::vector<double>& history) const {
    const std::size_t window = set_.stall_window;
    if (history.size() <= window) return false;
    const double before = *std::min_element(history.begin(), history.end() - static_cast<std::ptrdiff_t>(window));
    const double recent = *std::min_element(history.end() - static_cast<std::ptrdiff_t>(window), history.end());
    return recent * set_.stall_factor > before;
  }

  void store_state(SolverState& st) const {
    if (!(u_[n_ + m_] > 0.0)) return;
    st.x.assign(x_.data(), x_.data() + n_);
    st.y.assign(y_.data(), y_.data() + m_);
    st.s.assign(s_.data(), s_.data() + m_);
  }

  const ConicProgram& prog_;
  const SolverSettings& set_;
  Eigen::Index n_ = 0;
  Eigen::Index m_ = 0;
  SpMat a_orig_;
  SpMat a_;
  Vec d_, e_, b_, c_;
  double sb_ = 1.0;
  double sc_ = 1.0;
  double scale_ = 1.0;
  SpMat kkt_;
  std::vector<int> diag_pos_;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
  Vec p_;
  double h_dot_p_ = 0.0;
  Vec w_, ut_, u_, v_;
  Vec x_, y_, s_;
  PsdProjector psd_;
};

}  // namespace

SolverResult solve(const ConicProgram& program, const SolverSettings& settings, const SolverState* warm,
                   const IterationCallback& on_check) {
  settings.validate();
  program.validate();
  Admm admm(program, settings);
  return admm.run(warm, on_check);
}

Residuals residuals(const ConicProgram& program, const SolverState& state) {
  program.validate();
  if (state.x.size() != program.cols || state.y.size() != program.rows || state.s.size() != program.rows) {
    throw InputError("residuals: state dimensions do not match the program");
  }
  const auto n = static_cast<Eigen::Index>(program.cols);
  const auto m = static_cast<Eigen::Index>(program.rows);
  const SpMat a = to_sparse(program);
  const Eigen::Map<const Vec> x(state.x.data(), n), y(state.y.data(), m), s(state.s.data(), m);
  const Eigen::Map<const Vec> b(program.b.data(), m), c(program.c.data(), n);
  const Vec ax = a * x;
  const Vec aty = a.transpose() * y;
  Residuals r;
  r.primal = inf_norm(ax + s - b) / (1.0 + std::max({inf_norm(ax), inf_norm(s), inf_norm(b)}));
  r.dual = inf_norm(aty + c) / (1.0 + std::max(inf_norm(aty), inf_norm(c)));
  const double pobj = c.dot(x);
  const double dobj = -b.dot(y);
  r.gap = std::fabs(pobj - dobj) / (1.0 + std::max(std::fabs(pobj), std::fabs(dobj)));
  return r;
}

}  // namespace sosgap
