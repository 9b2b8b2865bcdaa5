#include "qcharmlab/harmonic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qcharmlab/errors.hpp"

namespace qcharmlab {

namespace {

// In-place iterative radix-2 FFT (forward: sign = -1).
void fft(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const Complex wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            Complex w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = a[i + k];
                Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

double poisson_kernel(double r, double x) {
    if (r >= 1.0) {
        throw Error(ErrorCode::InvalidRadius, "r = " + std::to_string(r) + " >= 1");
    }
    return (1.0 - r * r) / (kTwoPi * (1.0 - 2.0 * r * std::cos(x) + r * r));
}

PhaseMap PhaseMap::uniform(double offset) {
    PhaseMap p;
    p.kind = Kind::Uniform;
    p.offset = offset;
    return p;
}

PhaseMap PhaseMap::param_uniform() {
    PhaseMap p;
    p.kind = Kind::ParamUniform;
    return p;
}

PhaseMap PhaseMap::perturbed_uniform(double amplitude, int mode, double phase) {
    PhaseMap p;
    p.kind = Kind::PerturbedUniform;
    p.amplitude = amplitude;
    p.mode = mode;
    p.phase = phase;
    return p;
}

PhaseMap PhaseMap::tabulated(std::vector<double> s_values) {
    PhaseMap p;
    p.kind = Kind::Tabulated;
    p.table = std::move(s_values);
    return p;
}

double BoundaryCorrespondence::s_of_theta(double theta) const {
    const double L = curve->length();
    switch (phase.kind) {
        case PhaseMap::Kind::Uniform:
            return wrap_periodic(L * (theta + phase.offset) / kTwoPi, L);
        case PhaseMap::Kind::ParamUniform:
            return curve->arclength_of_param(wrap_angle(theta));
        case PhaseMap::Kind::PerturbedUniform:
            return wrap_periodic(
                L * (theta + phase.amplitude *
                                 std::sin(phase.mode * theta + phase.phase)) /
                    kTwoPi,
                L);
        case PhaseMap::Kind::Tabulated: {
            // Periodic linear interpolation of the residual s_j - L j / m;
            // the residual is periodic so the interpolant has degree 1.
            const int m = static_cast<int>(phase.table.size());
            double u = wrap_angle(theta) * m / kTwoPi;
            int j = std::min(static_cast<int>(u), m - 1);
            double frac = u - j;
            auto residual = [&](int idx) {
                return phase.table[idx % m] +
                       (idx >= m ? L : 0.0) -  // unwrap across the seam
                       L * idx / m;
            };
            double res = (1 - frac) * residual(j) + frac * residual(j + 1);
            return wrap_periodic(res + L * u / m, L);
        }
    }
    return 0;
}

BoundaryCorrespondence BoundaryCorrespondence::make(const JordanCurve& curve,
                                                    const PhaseMap& phase, int n) {
    BoundaryCorrespondence f;
    f.curve = &curve;
    f.phase = phase;
    f.n = n;
    if (phase.kind == PhaseMap::Kind::PerturbedUniform &&
        std::fabs(phase.amplitude * phase.mode) >= 1.0) {
        throw Error(ErrorCode::NotHomeomorphism,
                    "perturbation amplitude * mode >= 1, phase map not monotone");
    }
    if (phase.kind == PhaseMap::Kind::Tabulated && phase.table.size() < 8) {
        throw Error(ErrorCode::NotHomeomorphism, "tabulated phase needs >= 8 entries");
    }
    // Monotone degree-1 check: the lifted phase must strictly increase and
    // gain exactly L over one turn.
    const double L = curve.length();
    double prev = f.s_of_theta(0.0);
    double lift = prev;
    for (int j = 1; j <= n; ++j) {
        double s = f.s_of_theta(kTwoPi * j / n);
        double step = s - prev;
        if (step < 0) step += L;
        if (j < n && step <= 0) {
            throw Error(ErrorCode::NotHomeomorphism,
                        "phase map not strictly increasing near theta = " +
                            std::to_string(kTwoPi * j / n));
        }
        lift += step;
        prev = s;
    }
    if (std::fabs(lift - f.s_of_theta(0.0) - L) > 1e-6 * L) {
        throw Error(ErrorCode::NotHomeomorphism, "phase map is not degree 1");
    }

    f.samples.resize(n);
    for (int j = 0; j < n; ++j) {
        double theta = kTwoPi * j / n;
        if (phase.kind == PhaseMap::Kind::ParamUniform) {
            f.samples[j] = curve.param_point(theta);
        } else {
            f.samples[j] = curve.point(f.s_of_theta(theta));
        }
    }
    return f;
}

Mat2 GradientSample::matrix() const {
    // w_x = wz + wzbar, w_y = i (wz - wzbar), split into real parts.
    const double ux = (wz + wzbar).real();
    const double vx = (wz + wzbar).imag();
    const double uy = (wzbar - wz).imag();
    const double vy = (wz - wzbar).real();
    return {ux, uy, vx, vy};
}

HarmonicMap HarmonicMap::from_boundary_samples(const std::vector<Complex>& samples) {
    const std::size_t n = samples.size();
    if (n < 2 || !std::has_single_bit(n)) {
        throw Error(ErrorCode::ConfigError,
                    "sample count must be a power of two, got " + std::to_string(n));
    }
    std::vector<Complex> spec = samples;
    fft(spec, -1);
    for (auto& c : spec) c /= static_cast<double>(n);

    // spec[k] is c_k for k < n/2 and c_{k-n} for k > n/2; c_{n/2} is split
    // evenly between +n/2 and -n/2.
    const int half = static_cast<int>(n) / 2;
    HarmonicMap map;
    map.pos_.assign(half + 1, Complex(0));
    map.neg_.assign(half, Complex(0));
    for (int k = 0; k < half; ++k) map.pos_[k] = spec[k];
    map.pos_[half] = 0.5 * spec[half];
    map.neg_[half - 1] = 0.5 * spec[half];
    for (int k = 1; k < half; ++k) map.neg_[k - 1] = spec[n - k];

    double max_mag = 0;
    for (const auto& c : map.pos_) max_mag = std::max(max_mag, std::abs(c));
    for (const auto& c : map.neg_) max_mag = std::max(max_mag, std::abs(c));

    // Alias check on the top sixteenth of the spectrum, before trimming.
    double worst_alias = 0;
    const int alias_from = half - std::max(1, half / 16);
    for (int k = alias_from; k <= half; ++k) {
        worst_alias = std::max(worst_alias, std::abs(map.pos_[k]));
    }
    for (int k = alias_from; k <= half; ++k) {
        worst_alias = std::max(worst_alias, std::abs(map.neg_[k - 1]));
    }
    map.alias_ratio_ = max_mag > 0 ? worst_alias / max_mag : 0;
    map.alias_warning_ = map.alias_ratio_ > 1e-8;

    // Trim rounding noise so affine test maps stay exactly affine.
    const double floor_mag = 1e-13 * max_mag;
    for (auto& c : map.pos_) {
        if (std::abs(c) < floor_mag) c = 0;
    }
    for (auto& c : map.neg_) {
        if (std::abs(c) < floor_mag) c = 0;
    }
    while (map.pos_.size() > 1 && map.pos_.back() == Complex(0)) map.pos_.pop_back();
    while (!map.neg_.empty() && map.neg_.back() == Complex(0)) map.neg_.pop_back();
    map.nyquist_order_ = half;
    return map;
}

HarmonicMap HarmonicMap::from_coefficients(std::vector<Complex> pos,
                                           std::vector<Complex> neg) {
    HarmonicMap map;
    map.pos_ = std::move(pos);
    map.neg_ = std::move(neg);
    if (map.pos_.empty()) map.pos_.push_back(Complex(0));
    return map;
}

Complex HarmonicMap::eval(Complex z) const {
    Complex zb = std::conj(z);
    Complex acc_pos = 0;
    for (std::size_t k = pos_.size(); k-- > 0;) acc_pos = acc_pos * z + pos_[k];
    Complex acc_neg = 0;
    for (std::size_t k = neg_.size(); k-- > 0;) acc_neg = acc_neg * zb + neg_[k];
    return acc_pos + acc_neg * zb;
}

GradientSample HarmonicMap::gradient(Complex z) const {
    if (std::abs(z) >= 1.0 - 1e-14) require_boundary_differentiable();
    Complex zb = std::conj(z);
    Complex wz = 0;
    for (std::size_t k = pos_.size(); k-- > 1;) {
        wz = wz * z + static_cast<double>(k) * pos_[k];
    }
    Complex wzbar = 0;
    for (std::size_t k = neg_.size(); k-- > 0;) {
        wzbar = wzbar * zb + static_cast<double>(k + 1) * neg_[k];
    }
    return {z, wz, wzbar};
}

Complex HarmonicMap::radial_derivative(double theta) const {
    require_boundary_differentiable();
    const Complex e = std::polar(1.0, theta);
    Complex acc = 0;
    for (std::size_t k = pos_.size(); k-- > 1;) {
        acc = acc * e + static_cast<double>(k) * pos_[k];
    }
    acc *= e;
    const Complex einv = std::conj(e);
    Complex acc_neg = 0;
    for (std::size_t k = neg_.size(); k-- > 0;) {
        acc_neg = acc_neg * einv + static_cast<double>(k + 1) * neg_[k];
    }
    return acc + acc_neg * einv;
}

Complex HarmonicMap::coefficient(int k) const {
    if (k >= 0) {
        return k < static_cast<int>(pos_.size()) ? pos_[k] : Complex(0);
    }
    int idx = -k - 1;
    return idx < static_cast<int>(neg_.size()) ? neg_[idx] : Complex(0);
}

int HarmonicMap::max_order() const {
    return std::max(static_cast<int>(pos_.size()) - 1,
                    static_cast<int>(neg_.size()));
}

void HarmonicMap::require_boundary_differentiable() const {
    // Summability proxy: |n c_n| over the top eighth of the analysis band.
    // A map whose coefficients were trimmed to a low-degree polynomial has
    // an exact, everywhere-smooth boundary derivative, so the band is tied
    // to the original Nyquist order, not to the trimmed degree.
    const int order = nyquist_order_ > 0 ? nyquist_order_ : 0;
    if (order == 0) return;
    const int from = std::max(1, order - std::max(1, order / 8));
    double tail = 0;
    for (int k = from; k <= order; ++k) {
        tail += k * (std::abs(coefficient(k)) + std::abs(coefficient(-k)));
    }
    if (tail > 1e-8) {
        throw Error(ErrorCode::BoundaryDivergence,
                    "coefficient tail |n c_n| = " + std::to_string(tail) +
                        " exceeds 1e-8; boundary derivative not trusted");
    }
}

HarmonicMap poisson_extend(const BoundaryCorrespondence& f) {
    if (f.n < 64 || !std::has_single_bit(static_cast<unsigned>(f.n))) {
        throw Error(ErrorCode::ConfigError,
                    "boundary sample count must be a power of two >= 64");
    }
    return HarmonicMap::from_boundary_samples(f.samples);
}

}  // namespace qcharmlab
