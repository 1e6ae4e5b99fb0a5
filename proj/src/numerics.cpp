#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "fockpr/errors.hpp"

namespace fockpr::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BarycentricInterpolant::BarycentricInterpolant(std::vector<double> nodes,
                                               std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
    const std::size_t n = nodes_.size();
    if (n == 0 || n != values_.size())
        raise(errc::invalid_argument, "BarycentricInterpolant: bad node/value lists");
    // weights in log scale: w_j = prod_k 1/(x_j - x_k)
    std::vector<double> logs(n);
    std::vector<double> signs(n, 1.0);
    double peak = -kInf;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0, sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            double d = nodes_[j] - nodes_[k];
            if (d == 0.0) raise(errc::invalid_argument, "BarycentricInterpolant: repeated node");
            s -= std::log(std::abs(d));
            if (d < 0.0) sign = -sign;
        }
        logs[j] = s;
        signs[j] = sign;
        peak = std::max(peak, s);
    }
    weights_.resize(n);
    for (std::size_t j = 0; j < n; ++j) weights_[j] = signs[j] * std::exp(logs[j] - peak);
}

std::pair<cplx, cplx> BarycentricInterpolant::eval(cplx z) const {
    const std::size_t n = nodes_.size();
    double nearest = kInf;
    for (std::size_t j = 0; j < n; ++j) nearest = std::min(nearest, std::abs(z - nodes_[j]));
    if (nearest < 1e-12 * (1.0 + std::abs(z))) z += cplx(0.6e-8, 0.8e-8) * (1.0 + std::abs(z));

    cplx num = 0.0, den = 0.0, num2 = 0.0, den2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cplx t = weights_[j] / (z - nodes_[j]);
        num += t * values_[j];
        den += t;
        cplx t2 = t / (z - nodes_[j]);
        num2 += t2 * values_[j];
        den2 += t2;
    }
    cplx g = num / den;
    cplx gp = (-num2 + g * den2) / den;
    return {g, gp};
}

std::vector<cplx> aberth_on_values(const BarycentricInterpolant& interp, int count,
                                   double radius, double rotation, int max_sweeps) {
    std::vector<cplx> z(count);
    for (int j = 0; j < count; ++j) {
        double angle = 2.0 * kPi * (j + rotation) / count;
        z[j] = std::polar(radius * (1.0 + 0.1 * (j + 1) / count), angle);
    }
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (int i = 0; i < count; ++i) {
            auto [g, gp] = interp.eval(z[i]);
            if (g == cplx(0.0)) continue;
            cplx lam = gp / g;
            for (int k = 0; k < count; ++k)
                if (k != i) lam -= 1.0 / (z[i] - z[k]);
            if (lam == cplx(0.0)) continue;
            cplx step = 1.0 / lam;
            double cap = 3.0;
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            z[i] -= step;
            moved = std::max(moved, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

LmResult levenberg_marquardt(
    const std::function<void(const std::vector<double>&, std::vector<double>&,
                             std::vector<double>&)>& residual_jacobian,
    std::vector<double> theta0, int m, int max_iters) {
    const int n = static_cast<int>(theta0.size());
    std::vector<double> r(m), jac(static_cast<std::size_t>(m) * n);
    std::vector<double> r_new(m), jac_new(static_cast<std::size_t>(m) * n);

    auto eval = [&](const std::vector<double>& th, std::vector<double>& rr,
                    std::vector<double>& jj) {
        residual_jacobian(th, rr, jj);
        double c = 0.0;
        for (double v : rr) c += v * v;
        return c;
    };

    LmResult out;
    out.theta = std::move(theta0);
    double cost = eval(out.theta, r, jac);
    double lambda = 1e-3;
    Eigen::MatrixXd J(m, n);
    for (int it = 0; it < max_iters; ++it) {
        out.iterations = it + 1;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) J(i, j) = jac[static_cast<std::size_t>(i) * n + j];
        Eigen::VectorXd rv = Eigen::Map<Eigen::VectorXd>(r.data(), m);
        Eigen::MatrixXd JtJ = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * rv;
        Eigen::VectorXd diag = JtJ.diagonal().cwiseMax(1e-12);
        Eigen::MatrixXd A = JtJ;
        A.diagonal() += lambda * diag;
        Eigen::VectorXd dth = A.ldlt().solve(-g);
        std::vector<double> th_new(out.theta);
        for (int j = 0; j < n; ++j) th_new[j] += dth(j);
        double c_new = eval(th_new, r_new, jac_new);
        if (c_new < cost) {
            out.theta.swap(th_new);
            r.swap(r_new);
            jac.swap(jac_new);
            cost = c_new;
            lambda = std::max(lambda * 0.3, 1e-14);
            double tmax = 0.0;
            for (double t : out.theta) tmax = std::max(tmax, std::abs(t));
            if (dth.cwiseAbs().maxCoeff() < 1e-15 * (1.0 + tmax)) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e14) break;
        }
    }
    out.cost = cost;
    return out;
}

namespace {

// Residual/Jacobian of log(lead) + sum_j log((x-a_j)^2 + b_j^2) against log v
// at real nodes. theta = [log lead, a_1..a_q, b_1..b_q].
void pair_model_system(const std::vector<double>& nodes, const std::vector<double>& logv,
                       const std::vector<double>& th, std::vector<double>& r,
                       std::vector<double>& jac) {
    const int m = static_cast<int>(nodes.size());
    const int q = (static_cast<int>(th.size()) - 1) / 2;
    const int n = 2 * q + 1;
    for (int i = 0; i < m; ++i) {
        double acc = th[0];
        double* row = &jac[static_cast<std::size_t>(i) * n];
        row[0] = 1.0;
        for (int j = 0; j < q; ++j) {
            double dx = nodes[i] - th[1 + j];
            double b = th[1 + q + j];
            double d2 = std::max(dx * dx + b * b, 1e-280);
            acc += std::log(d2);
            row[1 + j] = -2.0 * dx / d2;
            row[1 + q + j] = 2.0 * b / d2;
        }
        r[i] = acc - logv[i];
    }
}

std::vector<cplx> pair_up_uhp(std::vector<cplx> roots) {
    std::vector<cplx> reps;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        cplx z = roots[i];
        double best = kInf;
        std::size_t bj = i;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(std::conj(z) - roots[j]);
            if (d < best) {
                best = d;
                bj = j;
            }
        }
        if (bj != i) used[bj] = true;
        reps.push_back(z.imag() >= 0.0 ? z : std::conj(z));
    }
    return reps;
}

} // namespace

PairFit fit_squared_modulus(const std::vector<double>& nodes, const std::vector<double>& values,
                            int q, int max_restarts) {
    const std::size_t n = nodes.size();
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, v);

    PairFit fit;
    if (vmax == 0.0) return fit; // identically zero data

    // deterministic hold-out: every fifth node (by sorted order) is validated
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
    std::vector<double> kn, kv, hn, hv;
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t i = order[r];
        if (r % 5 == 2 && n - (hn.size() + 1) >= static_cast<std::size_t>(2 * q + 1)) {
            hn.push_back(nodes[i]);
            hv.push_back(values[i]);
        } else {
            kn.push_back(nodes[i]);
            kv.push_back(values[i]);
        }
    }
    if (hn.empty() && !kn.empty()) {
        hn.push_back(kn.back());
        hv.push_back(kv.back());
        kn.pop_back();
        kv.pop_back();
    }

    // per-node relative misfit with an absolute floor; v = 0 at a node sitting
    // on a zero is legitimate
    auto held_out_residual = [&](const std::vector<cplx>& reps, double lead) {
        double worst = 0.0;
        for (std::size_t i = 0; i < hn.size(); ++i) {
            double model = lead;
            for (const cplx& w : reps) {
                double dx = hn[i] - w.real();
                model *= dx * dx + w.imag() * w.imag();
            }
            worst = std::max(worst, std::abs(model - hv[i]) / std::max(hv[i], 1e-12 * vmax));
        }
        return worst;
    };

    if (q == 0) {
        double mean = 0.0;
        for (double v : kv) mean += v;
        mean /= static_cast<double>(kv.size());
        fit.lead = mean;
        fit.held_out_residual = held_out_residual({}, mean);
        return fit;
    }

    BarycentricInterpolant interp(kn, kv);
    std::vector<double> logv;
    std::vector<double> logn;
    for (std::size_t i = 0; i < kn.size(); ++i) {
        if (kv[i] > 1e-280 * vmax) {
            logn.push_back(kn[i]);
            logv.push_back(std::log(kv[i]));
        }
    }

    static constexpr double kRadii[8] = {1.2, 0.8, 1.8, 2.6, 1.2, 0.8, 1.8, 2.6};
    static constexpr double kRotations[8] = {0.37, 0.11, 0.61, 0.87, 0.23, 0.49, 0.73, 0.05};
    double best_res = kInf;
    for (int t = 0; t < std::min(max_restarts, 8); ++t) {
        std::vector<cplx> roots = aberth_on_values(interp, 2 * q, kRadii[t], kRotations[t]);
        std::vector<cplx> reps = pair_up_uhp(std::move(roots));
        if (static_cast<int>(reps.size()) != q) continue;

        double prod = 1.0;
        for (const cplx& w : reps) {
            double dx = kn.back() - w.real();
            prod *= dx * dx + w.imag() * w.imag();
        }
        double lead0 = prod > 0.0 ? kv.back() / prod : 1.0;
        lead0 = std::max(lead0, 1e-300);

        std::vector<double> th0(2 * q + 1);
        th0[0] = std::log(lead0);
        for (int j = 0; j < q; ++j) {
            th0[1 + j] = reps[j].real();
            th0[1 + q + j] = reps[j].imag();
        }
        auto system = [&](const std::vector<double>& th, std::vector<double>& r,
                          std::vector<double>& jac) { pair_model_system(logn, logv, th, r, jac); };
        LmResult lm = levenberg_marquardt(system, th0, static_cast<int>(logn.size()), 100);

        std::vector<cplx> refined(q);
        for (int j = 0; j < q; ++j)
            refined[j] = cplx(lm.theta[1 + j], std::abs(lm.theta[1 + q + j]));
        double lead = std::exp(lm.theta[0]);
        double res = held_out_residual(refined, lead);
        if (res < best_res) {
            best_res = res;
            fit.reps = std::move(refined);
            fit.lead = lead;
            fit.held_out_residual = res;
        }
        if (best_res <= 1e-9) break;
    }
    return fit;
}

JointFit joint_magnitude_fit(const std::vector<cplx>& points, const std::vector<double>& mags,
                             const std::vector<cplx>& roots0, double lead0, int max_iters) {
    JointFit out;
    const int q = static_cast<int>(roots0.size());
    double mmax = 0.0;
    for (double m : mags) mmax = std::max(mmax, m);
    if (q == 0 || mmax == 0.0) {
        out.roots = roots0;
        out.lead = lead0;
        out.converged = true;
        return out;
    }
    std::vector<cplx> pts;
    std::vector<double> logm;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (mags[i] > 1e-13 * mmax) {
            pts.push_back(points[i]);
            logm.push_back(std::log(mags[i]));
        }
    }
    const int m = static_cast<int>(pts.size());
    const int n = 2 * q + 1;
    if (m < n) {
        out.roots = roots0;
        out.lead = lead0;
        return out;
    }
    auto system = [&](const std::vector<double>& th, std::vector<double>& r,
                      std::vector<double>& jac) {
        for (int i = 0; i < m; ++i) {
            double acc = th[0];
            double* row = &jac[static_cast<std::size_t>(i) * n];
            row[0] = 1.0;
            for (int j = 0; j < q; ++j) {
                cplx d = pts[i] - cplx(th[1 + j], th[1 + q + j]);
                double d2 = std::max(std::norm(d), 1e-280);
                acc += 0.5 * std::log(d2);
                row[1 + j] = -d.real() / d2;
                row[1 + q + j] = -d.imag() / d2;
            }
            r[i] = acc - logm[i];
        }
    };
    std::vector<double> th0(n);
    th0[0] = std::log(std::max(lead0, 1e-300));
    for (int j = 0; j < q; ++j) {
        th0[1 + j] = roots0[j].real();
        th0[1 + q + j] = roots0[j].imag();
    }
    LmResult lm = levenberg_marquardt(system, th0, m, max_iters);
    out.roots.resize(q);
    for (int j = 0; j < q; ++j) out.roots[j] = cplx(lm.theta[1 + j], lm.theta[1 + q + j]);
    out.lead = std::exp(lm.theta[0]);
    out.converged = lm.cost / m < 1e-16;
    return out;
}

double product_model_residual(const std::vector<cplx>& points, const std::vector<double>& mags,
                              const std::vector<cplx>& roots, double lead) {
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double model = lead;
        for (const cplx& w : roots) model *= std::abs(points[i] - w);
        worst = std::max(worst, std::abs(model - mags[i]));
    }
    return worst;
}

} // namespace fockpr::detail
