#include <cmath>
#include <complex>
#include <vector>

#include "quartic/painleve2.hpp"

// Ai, Ai': Maclaurin series in long double near the origin, Poincare
// expansions far out, and a Taylor-marched knot table on [4.4, 9.0] where
// neither reaches double precision (series cancellation grows like e^{2*zeta},
// the divergent expansion bottoms out near e^{-2*zeta}).

namespace quartic {

namespace {

using ldcplx = std::complex<long double>;

constexpr double kSeriesRadius = 4.6;
constexpr double kNegSwitch = 7.5;
constexpr double kPosSwitch = 8.2;
constexpr double kSeedPoint = 9.0;
const double kSqrtPi = std::sqrt(M_PI);

struct SeriesResult {
    ldcplx ai, aip;
};

// Maclaurin sums for Ai = c1 f - c2 g and its derivative.
SeriesResult maclaurin(ldcplx z) {
    static const long double c1 = powl(3.0L, -2.0L / 3.0L) / tgammal(2.0L / 3.0L);
    static const long double c2 = powl(3.0L, -1.0L / 3.0L) / tgammal(1.0L / 3.0L);
    const ldcplx z3 = z * z * z;
    ldcplx f = 1.0L, tf = 1.0L;
    ldcplx g = z, tg = z;
    ldcplx fp = 0.0L, tfp = 0.5L * z * z;  // first term of f' is z^2/2
    ldcplx gp = 1.0L, tgp = 1.0L;
    fp = tfp;
    for (int k = 0; k < 200; ++k) {
        tf *= z3 / static_cast<long double>((3 * k + 2) * (3 * k + 3));
        tg *= z3 / static_cast<long double>((3 * k + 3) * (3 * k + 4));
        tgp *= z3 / static_cast<long double>((3 * k + 1) * (3 * k + 3));
        f += tf;
        g += tg;
        gp += tgp;
        if (k >= 1) {
            // f' term ratio carries the extra (k+1)/k factor.
            tfp *= z3 * static_cast<long double>(k + 1) /
                   static_cast<long double>(k * (3 * k + 2) * (3 * k + 3));
            fp += tfp;
        }
        const long double m = std::abs(tf) + std::abs(tg) + std::abs(tgp);
        if (m < 1e-25L * (std::abs(f) + std::abs(g) + 1.0L)) break;
    }
    // k = 1 term of f' (z^2/2 was seeded as tfp; loop added k>=1 updates).
    return {c1 * f - c2 * g, c1 * fp - c2 * gp};
}

// Poincare coefficients u_k (and v_k for the derivative).
void asymptotic_sums(double inv_zeta, double& SA, double& SB, int sign_alt) {
    // sign_alt = -1 gives the alternating (exponential) sums; +1 the plain ones.
    double uk = 1.0, SAl = 1.0, SBl = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 60; ++k) {
        uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
              (216.0 * k * (2.0 * k - 1.0));
        const double vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        const double tu = uk * std::pow(inv_zeta, k) * ((sign_alt < 0 && (k & 1)) ? -1.0 : 1.0);
        const double tv = vk * std::pow(inv_zeta, k) * ((sign_alt < 0 && (k & 1)) ? -1.0 : 1.0);
        if (std::abs(tu) > prev) break;  // divergent tail reached
        SAl += tu;
        SBl += tv;
        prev = std::abs(tu);
        if (std::abs(tu) < 1e-18) break;
    }
    SA = SAl;
    SB = SBl;
}

void airy_pos_asymptotic(double x, double& ai, double& aip) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double SA, SB;
    asymptotic_sums(1.0 / zeta, SA, SB, -1);
    const double pre = std::exp(-zeta) / (2.0 * kSqrtPi);
    const double x14 = std::pow(x, 0.25);
    ai = pre / x14 * SA;
    aip = -pre * x14 * SB;
}

// Oscillatory side, DLMF 9.7.9-9.7.10 with zeta = (2/3)|x|^{3/2}.
void airy_neg_asymptotic(double x, double& ai, double& aip) {
    const double X = -x;
    const double zeta = 2.0 / 3.0 * X * std::sqrt(X);
    double uk = 1.0, vk;
    double P = 1.0, Q = 0.0, R = 1.0, S = 0.0;
    double term = 1.0;
    for (int k = 1; k < 60; ++k) {
        uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
              (216.0 * k * (2.0 * k - 1.0));
        vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        const double t = uk / std::pow(zeta, k);
        if (t > term && k > 4) break;
        term = t;
        const int m = k / 2;
        const double sgn = (m & 1) ? -1.0 : 1.0;
        if (k % 2 == 0) {
            P += sgn * t;
            R += sgn * (vk / std::pow(zeta, k));
        } else {
            Q += sgn * t;
            S += sgn * (vk / std::pow(zeta, k));
        }
        if (t < 1e-18) break;
    }
    const double c = std::cos(zeta - 0.25 * M_PI), s = std::sin(zeta - 0.25 * M_PI);
    const double x14 = std::pow(X, 0.25);
    ai = (c * P + s * Q) / (kSqrtPi * x14);
    aip = x14 / kSqrtPi * (s * R - c * S);
}

// Knot table on [4.4, 9.0] built once by Taylor-marching the Airy ODE down
// from an asymptotic seed; downward is the growing direction for Ai, so the
// march is stable.
struct MidTable {
    double x0 = 4.4, h = 0.1;
    std::vector<long double> ai, aip;
    MidTable() {
        const int n = static_cast<int>(std::lround((kSeedPoint - x0) / h)) + 1;
        ai.resize(n);
        aip.resize(n);
        double a, ap;
        airy_pos_asymptotic(kSeedPoint, a, ap);
        long double ca = a, cap = ap, cx = kSeedPoint;
        ai[n - 1] = ca;
        aip[n - 1] = cap;
        for (int i = n - 2; i >= 0; --i) {
            taylor_step(cx, -h, ca, cap);
            cx -= h;
            ai[i] = ca;
            aip[i] = cap;
        }
    }
    // Order-28 Taylor step of y'' = x y.
    static void taylor_step(long double x, double step, long double& y, long double& yp) {
        const int K = 28;
        std::vector<long double> a(K + 2);
        a[0] = y;
        a[1] = yp;
        for (int k = 0; k <= K - 1; ++k) {
            // (k+2)(k+1) a_{k+2} = x a_k + a_{k-1}
            long double rhs = x * a[k] + (k >= 1 ? a[k - 1] : 0.0L);
            a[k + 2] = rhs / static_cast<long double>((k + 2) * (k + 1));
        }
        long double s = 0.0L, sp = 0.0L;
        for (int k = K + 1; k >= 1; --k) s = (s + a[k]) * step;
        s += a[0];
        for (int k = K + 1; k >= 2; --k) sp = (sp + static_cast<long double>(k) * a[k]) * step;
        sp += a[1];
        y = s;
        yp = sp;
    }
    void eval(double x, double& a, double& ap) const {
        int i = static_cast<int>(std::lround((x - x0) / h));
        i = std::max(0, std::min(static_cast<int>(ai.size()) - 1, i));
        long double y = ai[i], yp = aip[i];
        taylor_step(x0 + i * h, x - (x0 + i * h), y, yp);
        a = static_cast<double>(y);
        ap = static_cast<double>(yp);
    }
};

const MidTable& mid_table() {
    static const MidTable t;
    return t;
}

void airy_complex_asymptotic(std::complex<double> z, std::complex<double>& ai,
                             std::complex<double>& aip);

void airy_complex_core(std::complex<double> z, std::complex<double>& ai,
                       std::complex<double>& aip) {
    if (std::abs(z) <= 6.0) {
        const SeriesResult r = maclaurin(ldcplx(z.real(), z.imag()));
        ai = std::complex<double>(static_cast<double>(r.ai.real()),
                                  static_cast<double>(r.ai.imag()));
        aip = std::complex<double>(static_cast<double>(r.aip.real()),
                                   static_cast<double>(r.aip.imag()));
        return;
    }
    airy_complex_asymptotic(z, ai, aip);
}

void airy_complex_asymptotic(std::complex<double> z, std::complex<double>& ai,
                             std::complex<double>& aip) {
    const double th = std::arg(z);
    if (std::abs(th) <= 2.0 * M_PI / 3.0) {
        const std::complex<double> sz = std::sqrt(z);
        const std::complex<double> zeta = 2.0 / 3.0 * z * sz;
        // Alternating sums with complex 1/zeta.
        std::complex<double> SA = 1.0, SB = 1.0;
        double uk = 1.0;
        double prev = 1.0;
        const std::complex<double> iz = 1.0 / zeta;
        std::complex<double> p = 1.0;
        for (int k = 1; k < 40; ++k) {
            uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                  (216.0 * k * (2.0 * k - 1.0));
            p *= -iz;
            const double mag = uk * std::abs(p);
            if (mag > prev && k > 4) break;
            prev = mag;
            SA += uk * p;
            SB += uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k) * p;
            if (mag < 1e-17) break;
        }
        const std::complex<double> pre = std::exp(-zeta) / (2.0 * kSqrtPi);
        const std::complex<double> z14 = std::sqrt(sz);
        ai = pre / z14 * SA;
        aip = -pre * z14 * SB;
        return;
    }
    // Near the negative axis: rotate into the good sectors,
    // Ai(z) = -[w Ai(w z) + w^2 Ai(w^2 z)], w = e^{2 pi i/3}.
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
    const std::complex<double> w2 = std::conj(w);
    std::complex<double> a1, ap1, a2, ap2;
    airy_complex_asymptotic(w * z, a1, ap1);
    airy_complex_asymptotic(w2 * z, a2, ap2);
    ai = -(w * a1 + w2 * a2);
    aip = -(w * w * ap1 + w2 * w2 * ap2);
}

}  // namespace

void airy_real(double x, double& ai, double& aip) {
    if (std::abs(x) <= kSeriesRadius) {
        const SeriesResult r = maclaurin(ldcplx(x, 0.0L));
        ai = static_cast<double>(r.ai.real());
        aip = static_cast<double>(r.aip.real());
    } else if (x > 0.0 && x < kPosSwitch) {
        mid_table().eval(x, ai, aip);
    } else if (x >= kPosSwitch) {
        airy_pos_asymptotic(x, ai, aip);
    } else if (x > -kNegSwitch) {
        const SeriesResult r = maclaurin(ldcplx(x, 0.0L));
        ai = static_cast<double>(r.ai.real());
        aip = static_cast<double>(r.aip.real());
    } else {
        airy_neg_asymptotic(x, ai, aip);
    }
}

AiryPair airy(std::complex<double> z) {
    AiryPair out;
    if (z.imag() == 0.0) {
        double a, ap;
        airy_real(z.real(), a, ap);
        out.Ai = a;
        out.Aip = ap;
        return out;
    }
    std::complex<double> a, ap;
    airy_complex_core(z, a, ap);
    out.Ai = a;
    out.Aip = ap;
    return out;
}

}  // namespace quartic
