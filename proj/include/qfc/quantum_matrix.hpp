#pragma once

// Linearized input-output engine.  Builds the 4x4 drift matrix on the basis
// (b_s, b_s^dag, b_i, b_i^dag), inverts the cavity response and sandwiches
// vacuum statistics of the input, intrinsic-loss and collection-loss channels.

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "qfc/core_model.hpp"
#include "qfc/errors.hpp"
#include "qfc/moments.hpp"

namespace qfc
{
using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

struct DriftMatrix
{
    Matrix4c k;
    std::complex<double> sigma; // pump parameter, real with the pump phase fixed to zero
    double delta_s_eff = 0.0;
    double delta_i_eff = 0.0;
};

struct TransferMatrices
{
    Matrix4c input; // B_out = input * B_in + loss * B_gamma
    Matrix4c loss;
    double rcond = 1.0; // reciprocal condition estimate of the cavity response

    bool ill_conditioned() const { return rcond < 1e-12; }
};

inline DriftMatrix build_drift(const ResonatorParams &p, PumpRatio x, double delta_s_eff, double delta_i_eff)
{
    using namespace std::complex_literals;
    const std::complex<double> sigma = p.total_loss() * x.value();
    const double half_gamma = p.gamma / 2.0;

    DriftMatrix d;
    d.sigma = sigma;
    d.delta_s_eff = delta_s_eff;
    d.delta_i_eff = delta_i_eff;
    d.k.setZero();
    d.k(0, 0) = -1i * delta_s_eff - half_gamma;
    d.k(1, 1) = 1i * delta_s_eff - half_gamma;
    d.k(2, 2) = -1i * delta_i_eff - half_gamma;
    d.k(3, 3) = 1i * delta_i_eff - half_gamma;
    d.k(0, 3) = sigma / 2.0;
    d.k(1, 2) = std::conj(sigma) / 2.0;
    d.k(2, 1) = sigma / 2.0;
    d.k(3, 0) = std::conj(sigma) / 2.0;
    return d;
}

// Frequency-domain response at sideband offset omega from the comb-line
// center:
//   B_out = -[(W - K - kappa/2)(W - K + kappa/2)^-1 (sqrt(kappa) B_in + sqrt(gamma) B_gamma)
//             - sqrt(gamma) B_gamma] / sqrt(kappa),   W = i omega I.
// Expanded, the
// input map is kappa R - I and the loss map sqrt(kappa gamma) R, where
// R = (W - K + kappa/2)^-1.
inline TransferMatrices transfer_matrices(const DriftMatrix &drift, const ResonatorParams &p, double omega)
{
    using namespace std::complex_literals;
    const Matrix4c identity = Matrix4c::Identity();
    const Matrix4c response = (1i * omega) * identity - drift.k + (p.kappa / 2.0) * identity;

    Eigen::PartialPivLU<Matrix4c> lu(response);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-15) || !std::isfinite(rcond))
    {
        std::ostringstream os;
        os << "cavity response is singular at kappa=" << p.kappa << ", gamma=" << p.gamma
           << ", sigma=" << drift.sigma.real() << ", delta_s=" << drift.delta_s_eff
           << ", delta_i=" << drift.delta_i_eff << ", omega=" << omega;
        throw SingularityError(os.str());
    }
    const Matrix4c resolvent = lu.inverse();

    TransferMatrices t;
    t.input = p.kappa * resolvent - identity;
    t.loss = std::sqrt(p.kappa * p.gamma) * resolvent;
    t.rcond = rcond;
    return t;
}

// Raw spectral correlators before collection loss.  The photon numbers are
// returned complex so that their (numerically zero) imaginary part can be
// inspected.
struct SpectralCorrelators
{
    std::complex<double> n_s;
    std::complex<double> n_i;
    std::complex<double> m_si;
};

// Only <b(w) b^dag(w')> of the vacuum inputs is non-zero; on this basis that
// pairs column j of the map at -omega with column j+1 at +omega.
inline SpectralCorrelators spectral_correlators(const DriftMatrix &drift, const ResonatorParams &p, double omega)
{
    const TransferMatrices plus = transfer_matrices(drift, p, omega);
    const TransferMatrices minus = omega == 0.0 ? plus : transfer_matrices(drift, p, -omega);

    SpectralCorrelators c{};
    for (int j : {0, 2})
    {
        c.n_s += minus.input(1, j) * plus.input(0, j + 1) + minus.loss(1, j) * plus.loss(0, j + 1);
        c.n_i += minus.input(3, j) * plus.input(2, j + 1) + minus.loss(3, j) * plus.loss(2, j + 1);
        c.m_si += plus.input(0, j) * minus.input(2, j + 1) + plus.loss(0, j) * minus.loss(2, j + 1);
    }
    return c;
}

// Collection efficiency mixes in vacuum, which contributes no normally ordered
// moments: n -> eta n, m -> eta m.
inline QuantumMoments second_moments(const DriftMatrix &drift, const ResonatorParams &p, double omega, double eta)
{
    const SpectralCorrelators c = spectral_correlators(drift, p, omega);
    return {eta * c.n_s.real(), eta * c.n_i.real(), eta * c.m_si};
}
} // namespace qfc
