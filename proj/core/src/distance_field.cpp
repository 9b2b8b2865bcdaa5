#include "qcharmlab/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcharmlab/errors.hpp"

namespace qcharmlab {

Mat2 HessianFrame::reconstruct() const {
    // O^T diag(lambda, 0) O = lambda * r^T r with r the first row of O.
    const double co = std::cos(rotation_angle), si = std::sin(rotation_angle);
    const double rx = co, ry = -si;
    return {eigenvalue * rx * rx, eigenvalue * rx * ry,
            eigenvalue * rx * ry, eigenvalue * ry * ry};
}

DistanceField::DistanceField(const JordanCurve& curve, int coarse_samples)
    : curve_(curve) {
    const double L = curve.length();
    s_samples_.resize(coarse_samples);
    p_samples_.resize(coarse_samples);
    t_samples_.resize(coarse_samples);
    for (int i = 0; i < coarse_samples; ++i) {
        double s = i * L / coarse_samples;
        double t = curve.param_of_arclength(s);
        s_samples_[i] = s;
        t_samples_[i] = t;
        p_samples_[i] = curve.param_point(t);
    }

    // ess-sup of |curvature| by dense sampling with refinement doubling.
    int n = 4096;
    kappa0_ = curve.max_curvature(n);
    for (int round = 0; round < 3; ++round) {
        double refined = curve.max_curvature(2 * n);
        double change = refined - kappa0_;
        kappa0_ = refined;
        n *= 2;
        if (change < 1e-4) break;
    }

    estimate_reach();
}

double DistanceField::refine_foot(Complex z, double t_start) const {
    const JordanCurve& c = curve_;
    const double dt = kTwoPi / static_cast<double>(s_samples_.size());
    double lo = t_start - dt, hi = t_start + dt;
    auto fprime = [&](double t) {
        return 2.0 * dot(c.param_point(t) - z, c.param_velocity(t));
    };
    // Expand the bracket until f' changes sign across it.
    for (int tries = 0; tries < 8 && !(fprime(lo) <= 0 && fprime(hi) >= 0); ++tries) {
        lo -= dt;
        hi += dt;
    }
    double t = t_start;
    for (int iter = 0; iter < 60; ++iter) {
        Complex diff = c.param_point(t) - z;
        Complex v = c.param_velocity(t);
        Complex a = c.param_acceleration(t);
        double f1 = 2.0 * dot(diff, v);
        double f2 = 2.0 * (dot(v, v) + dot(diff, a));
        double t_next;
        if (f2 > 0) {
            t_next = t - f1 / f2;
        } else {
            t_next = 0.5 * (lo + hi);  // bisection fallback
        }
        if (t_next <= lo || t_next >= hi) t_next = 0.5 * (lo + hi);
        if (f1 > 0) hi = t; else lo = t;
        if (std::fabs(t_next - t) < 1e-15) { t = t_next; break; }
        t = t_next;
    }
    return t;
}

CurvePoint DistanceField::project(Complex z) const {
    const int n = static_cast<int>(p_samples_.size());
    int best = 0;
    double best_d2 = std::norm(p_samples_[0] - z);
    for (int i = 1; i < n; ++i) {
        double d2 = std::norm(p_samples_[i] - z);
        if (d2 < best_d2) { best_d2 = d2; best = i; }
    }
    double t = refine_foot(z, t_samples_[best]);
    return curve_.at(curve_.arclength_of_param(t));
}

FootResult DistanceField::query(Complex z) const {
    const JordanCurve& c = curve_;
    const int n = static_cast<int>(p_samples_.size());
    std::vector<double> d2(n);
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        d2[i] = std::norm(p_samples_[i] - z);
        best_d2 = std::min(best_d2, d2[i]);
    }
    const double best_d = std::sqrt(best_d2);
    const double ds = c.length() / n;
    // Coarse scan misses the true minimum by at most O(ds); refine every
    // local minimum that could still win or tie.
    const double margin = best_d + ds;

    struct Candidate { double t, s, dist; };
    std::vector<Candidate> mins;
    for (int i = 0; i < n; ++i) {
        double prev = d2[(i + n - 1) % n], next = d2[(i + 1) % n];
        if (d2[i] <= prev && d2[i] <= next && std::sqrt(d2[i]) <= margin) {
            double t = refine_foot(z, t_samples_[i]);
            double s = c.arclength_of_param(t);
            double dist = std::abs(c.param_point(t) - z);
            mins.push_back({t, s, dist});
        }
    }
    auto best_it = std::min_element(
        mins.begin(), mins.end(),
        [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });
    const Candidate& win = *best_it;

    // Tie check: a second minimizer within 1e-9 in distance but separated by
    // more than 1e-3 in arc length means z sits beyond the reach.
    for (const Candidate& cand : mins) {
        if (&cand == &win) continue;
        if (cand.dist - win.dist <= 1e-9 &&
            circular_distance(cand.s, win.s, c.length()) > 1e-3) {
            std::ostringstream msg;
            msg << "two foot points at arc lengths " << win.s << " and "
                << cand.s << " both at distance " << win.dist;
            throw Error(ErrorCode::AmbiguousFoot, msg.str());
        }
    }

    CurvePoint foot = c.at(win.s);
    if (dot(z - foot.position, foot.inner_normal) <= 0) {
        throw Error(ErrorCode::OutsideDomain, "query point is not strictly interior");
    }
    return {win.dist, foot};
}

FootResult DistanceField::query_with_hint(Complex z, double s_hint) const {
    const JordanCurve& c = curve_;
    double t = refine_foot(z, c.param_of_arclength(s_hint));
    double s = c.arclength_of_param(t);
    CurvePoint foot = c.at(s);
    double dist = std::abs(foot.position - z);
    if (dot(z - foot.position, foot.inner_normal) <= 0) {
        throw Error(ErrorCode::OutsideDomain, "query point is not strictly interior");
    }
    return {dist, foot};
}

Complex DistanceField::grad(Complex z) const { return query(z).foot.inner_normal; }

HessianFrame DistanceField::hessian_frame(Complex z) const {
    FootResult fr = query(z);
    const double kappa = fr.foot.curvature;
    const double denom = 1.0 - kappa * fr.distance;
    if (denom <= 0) {
        throw Error(ErrorCode::SingularCollar,
                    "1 - kappa*d = " + std::to_string(denom) + " <= 0");
    }
    HessianFrame frame;
    frame.kappa_foot = kappa;
    frame.distance = fr.distance;
    frame.eigenvalue = -kappa / denom;
    // rotation(angle) has first row = tangent, second row = inner normal.
    frame.rotation_angle = 0.5 * std::numbers::pi - std::arg(fr.foot.inner_normal);
    return frame;
}

bool DistanceField::is_inside(Complex z) const {
    CurvePoint foot = project(z);
    return dot(z - foot.position, foot.inner_normal) > 0;
}

void DistanceField::estimate_reach() {
    const JordanCurve& c = curve_;
    const double L = c.length();
    double mu = 1.0 / kappa0_;
    const int n_boundary = 256;
    const double fractions[] = {0.25, 0.5, 0.75, 0.95};
    for (int iter = 0; iter < 60; ++iter) {
        bool ok = true;
        for (int i = 0; i < n_boundary && ok; ++i) {
            double s = i * L / n_boundary;
            CurvePoint cp = c.at(s);
            for (double f : fractions) {
                Complex z = cp.position + f * mu * cp.inner_normal;
                CurvePoint foot = project(z);
                if (circular_distance(foot.arclength, s, L) > 1e-6 * L + 1e-9) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) break;
        mu *= 0.9;
    }
    reach_ = mu;
}

}  // namespace qcharmlab
