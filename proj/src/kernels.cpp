#include "quartic/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "quartic/painleve2.hpp"
#include "quartic/semiclassics.hpp"

namespace quartic {

double sine_kernel(double u, double v) {
    const double d = u - v;
    if (std::abs(d) < 1e-8) return 1.0 - (M_PI * M_PI / 6.0) * d * d;
    return std::sin(M_PI * d) / (M_PI * d);
}

double airy_kernel(double u, double v) {
    if (std::abs(u - v) < 1e-8) {
        const double m = 0.5 * (u + v);
        double ai, aip;
        airy_real(m, ai, aip);
        return aip * aip - m * ai * ai;
    }
    double au, aup, av, avp;
    airy_real(u, au, aup);
    airy_real(v, av, avp);
    return (au * avp - av * aup) / (u - v);
}

double critical_t_shift(double g, double y, int N) {
    const double t_c = -2.0 * std::sqrt(g);
    const double c0 = std::cbrt(t_c * t_c / (2.0 * g));
    return t_c + c0 * y * std::pow(static_cast<double>(N), -2.0 / 3.0);
}

ScalingReport scaling_limit_check(ScalingRegime regime, const ModelParams& p,
                                  double y, const std::vector<double>& offsets,
                                  const HMGrid& hm, const PhiSolution* phi) {
    ScalingReport rep;
    rep.regime = regime;
    const int N = p.N;
    rep.N = N;
    rep.y = y;
    const DerivedConstants dc = derive_constants(p);

    const RecurrenceData rec = stieltjes_recurrence(p, N + 1, 1e-11);
    const QuadratureRule rule = build_quadrature(p, N + 1, 1e-13);
    const PsiEvaluator ev(p, rec, rule);

    double center = 0.0, scale = 0.0;
    switch (regime) {
        case ScalingRegime::Bulk: {
            center = 0.5 * dc.z0();
            scale = density(p, center) * N;
            break;
        }
        case ScalingRegime::Edge: {
            WkbData wkb(p, N, hm);
            center = dc.z0();
            scale = wkb.tp_map_deriv_at_z0N() * std::pow(static_cast<double>(N), 2.0 / 3.0);
            break;
        }
        case ScalingRegime::Critical: {
            if (!phi) throw std::invalid_argument("scaling_limit_check: phi required");
            const ZetaMaps zm = zeta_maps(p, y, N);
            center = 0.0;
            scale = zm.zeta0_prime0() * std::cbrt(static_cast<double>(N));
            break;
        }
    }
    rep.center = center;
    rep.scale = scale;

    double worst = 0.0;
    for (double u : offsets) {
        for (double v : offsets) {
            const double zu = center + u / scale;
            const double zv = center + v / scale;
            const double finite = ev.cd_kernel(N, zu, zv) / scale;
            double limit = 0.0;
            switch (regime) {
                case ScalingRegime::Bulk:
                    limit = sine_kernel(u, v);
                    break;
                case ScalingRegime::Edge:
                    limit = airy_kernel(u, v);
                    break;
                case ScalingRegime::Critical:
                    limit = critical_kernel(*phi, u, v);
                    break;
            }
            worst = std::max(worst, std::abs(finite - limit));
        }
    }
    rep.sup_error = worst;
    return rep;
}

double density_from_kernel(const ModelParams& p, int N_level, double z) {
    const RecurrenceData rec = stieltjes_recurrence(p, N_level + 1, 1e-11);
    const QuadratureRule rule = build_quadrature(p, N_level + 1, 1e-13);
    const PsiEvaluator ev(p, rec, rule);
    return ev.cd_kernel(N_level, z, z) / N_level;
}

}  // namespace quartic
