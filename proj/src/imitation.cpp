#include "moranlab/imitation.hpp"

#include <cmath>
#include <stdexcept>

namespace moranlab {

ImitationKernel fermi_kernel(double p0, double s0) {
    if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("fermi_kernel: p0 must be in (0,1)");
    if (!(s0 >= 0.0)) throw std::invalid_argument("fermi_kernel: slope must be nonnegative");
    const double ratio = (1.0 - p0) / p0;
    const double rate = s0 / (p0 * (1.0 - p0));
    ImitationKernel k;
    k.response = [ratio, rate](double u) { return 1.0 / (1.0 + ratio * std::exp(-rate * u)); };
    k.at_zero = p0;
    k.slope_at_zero = s0;
    return k;
}

TransitionCoefficients imitation_coefficients(const MoranProcess& p, const ImitationKernel& k,
                                              int n) {
    if (!k.response) throw std::invalid_argument("imitation kernel has no response function");
    if (n < 0 || n > p.N) throw std::out_of_range("imitation_coefficients: bad state");
    if (n == 0 || n == p.N) return {0.0, 1.0, 0.0};
    const double nn = n, K = p.N;
    const double phi_a = fitness_a(p, n);
    const double phi_b = fitness_b(p, n);
    const double gain = k.response(phi_a - phi_b);
    const double loss = k.response(phi_b - phi_a);
    for (double v : {gain, loss}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("imitation response must map into [0,1]");
        }
    }
    const double up = ((K - nn) / K) * (nn / (K - 1.0)) * gain;
    const double down = (nn / K) * ((K - nn) / (K - 1.0)) * loss;
    return {up, 1.0 - (up + down), down};
}

ChainCoefficients imitation_chain_coefficients(const MoranProcess& p, const ImitationKernel& k) {
    validate_process(p);
    ChainCoefficients c;
    c.N = p.N;
    c.up.resize(static_cast<std::size_t>(p.N) + 1);
    c.stay.resize(static_cast<std::size_t>(p.N) + 1);
    c.down.resize(static_cast<std::size_t>(p.N) + 1);
    for (int n = 0; n <= p.N; ++n) {
        const auto t = imitation_coefficients(p, k, n);
        c.up[static_cast<std::size_t>(n)] = t.up;
        c.stay[static_cast<std::size_t>(n)] = t.stay;
        c.down[static_cast<std::size_t>(n)] = t.down;
    }
    return c;
}

ContinuumScales continuum_coefficients(const ImitationKernel& k) {
    return {k.at_zero, 2.0 * k.slope_at_zero};
}

PdeParams imitation_pde_params(const SelectionIncrements& s, const ImitationKernel& k, int grid) {
    const auto scales = continuum_coefficients(k);
    if (scales.diffusion == 0.0) {
        throw std::invalid_argument(
            "imitation kernel with response(0) == 0 has no diffusive rescaling");
    }
    const double mu = scales.drift / scales.diffusion;
    return PdeParams::selection(mu * s.alpha, mu * s.beta, grid);
}

double imitation_time_scale(const ImitationKernel& k) {
    return continuum_coefficients(k).diffusion;
}

double imitation_conserved(const SelectionIncrements& s, const ImitationKernel& k, double x) {
    const auto scales = continuum_coefficients(k);
    if (scales.diffusion == 0.0) {
        throw std::invalid_argument("imitation conserved profile needs response(0) > 0");
    }
    const double mu = scales.drift / scales.diffusion;
    return psi(mu * s.alpha, mu * s.beta, x);
}

}  // namespace moranlab
