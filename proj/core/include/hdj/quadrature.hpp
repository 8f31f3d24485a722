#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace hdj {

using cplx = std::complex<double>;

/// Discretized position-quadrature axis, self-dual under the factor-2
/// Fourier kernel exp(2iqq')/sqrt(pi).
///
/// The spacing is fixed to sqrt(pi/n) so that the discretized kernel is an
/// exact n x n unitary mapping the grid onto itself. Points are cell-centered,
///   q_j = (j + 1/2 - n/2) * spacing,
/// strictly increasing and symmetric about 0, with no point at the cutoff +-L.
class QuadratureGrid {
  public:
    /// n_points must be a power of two >= 8; throws std::invalid_argument
    /// otherwise (the transform layout is undefined for other sizes).
    explicit QuadratureGrid(std::size_t n_points);

    std::size_t size() const { return n_; }
    double spacing() const { return spacing_; }
    double half_width() const { return half_width_; }
    double point(std::size_t j) const { return points_[j]; }
    const std::vector<double>& points() const { return points_; }

    /// Index of the grid point nearest q; exact midpoints round toward +q.
    std::size_t nearest_index(double q) const;

    bool compatible(const QuadratureGrid& other) const { return n_ == other.n_; }

  private:
    std::size_t n_;
    double spacing_;
    double half_width_;
    std::vector<double> points_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

/// Factory enforcing the self-duality constraint spacing = sqrt(pi/n).
GridPtr make_grid(std::size_t n_points);

/// Width/window parameters of a squeezed Gaussian state.
/// s is the width parameter of the wavefunction exp(-q^2/s^2); the squeezing
/// parameter is r = ln(s). delta_s is the half-open measurement window width
/// around s used by the squeezed-window projector and the erf profiles.
struct GaussianParams {
    double s;
    double delta_s = 0.0;

    GaussianParams(double s_, double delta_s_ = 0.0);

    double r() const;  // ln(s)
    double window_low() const { return s - delta_s / 2.0; }
    double window_high() const { return s + delta_s / 2.0; }
};

/// Complex amplitude vector over a QuadratureGrid.
///
/// Stored amplitudes are wavefunction samples times sqrt(spacing), so that
/// sum_j |a_j|^2 is directly the probability carried by the state and no
/// density weights leak into other modules. States are immutable values;
/// every operation returns a new state.
class CvState {
  public:
    CvState(GridPtr grid, std::vector<cplx> amplitudes);

    const QuadratureGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return amps_.size(); }
    cplx amplitude(std::size_t j) const { return amps_[j]; }
    std::span<const cplx> amplitudes() const { return amps_; }

    double norm() const;
    CvState renormalized() const;  // norm exactly 1 +- 1e-10; throws on zero state

  private:
    GridPtr grid_;
    std::vector<cplx> amps_;
};

enum class FourierDirection { forward, inverse };
enum class Convention { paper, normalized };

/// Grid-level stand-in for the infinitely squeezed state |q0>: unit amplitude
/// at the grid point nearest q0. Requires |q0| <= half_width - spacing.
CvState position_eigenstate(const GridPtr& grid, double q0);

/// Wavefunction value (pi*s)^(-1/2) * exp(-q^2/s^2) of the width-s Gaussian.
/// This prefactor does not integrate |G|^2 to one (it integrates to
/// 1/sqrt(2*pi)); see Convention.
double paper_gaussian_amplitude(double q, double s);

/// Vacuum squeezed state of width s on the grid.
///
/// Convention::paper stores amplitudes (pi*s)^(-1/2) exp(-q_j^2/s^2) *
/// sqrt(spacing) exactly as the closed form dictates; Convention::normalized
/// renormalizes the same shape to unit norm. The grid must resolve the
/// Gaussian (spacing <= s/4 and half_width >= 5s) unless allow_unresolved.
CvState build_squeezed_state(const GridPtr& grid, const GaussianParams& params,
                             Convention convention, bool allow_unresolved = false);

/// Factor-2 continuum Fourier gate discretized on the self-dual grid.
///
/// forward applies the kernel exp(+2iqq')/sqrt(pi); inverse applies the
/// conjugate kernel. Realized as a radix-2 FFT conjugated by the linear
/// phase ramps induced by the -L grid offset; the composition is exactly
/// the dense kernel matrix. fourier o fourier is the parity psi(q) -> psi(-q)
/// and four applications are the identity.
CvState fourier(const CvState& state, FourierDirection direction);

/// Multiplies the amplitude at q_j by (-1)^{f(q_j)}. f_values must have one
/// bit per grid point.
CvState apply_phase_function(const CvState& state, std::span<const std::uint8_t> f_values);

/// sum_j conj(a_j) b_j. Grids must be compatible.
cplx overlap(const CvState& a, const CvState& b);

/// |<a|b>|^2.
double fidelity(const CvState& a, const CvState& b);

/// psi(q) -> psi(-q); an index reversal on the symmetric grid.
CvState parity(const CvState& state);

/// Width estimate 2*sqrt(<q^2>) of |psi|^2; equals s for a width-s Gaussian.
double fitted_gaussian_width(const CvState& state);

}  // namespace hdj
