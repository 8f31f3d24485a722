#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdj/dualrail.hpp"
#include "hdj/measurement.hpp"
#include "hdj/quadrature.hpp"

namespace hdj {

enum class PromiseClass { constant, balanced };

const char* to_string(PromiseClass c);

/// A promised Boolean function on the grid: one bit per grid point, tagged
/// constant or balanced.
class OracleSpec {
  public:
    OracleSpec(std::vector<std::uint8_t> values, PromiseClass declared_class, std::string label);

    const std::vector<std::uint8_t>& values() const { return values_; }
    PromiseClass declared_class() const { return declared_; }
    const std::string& label() const { return label_; }
    std::size_t domain_size() const { return values_.size(); }
    std::size_t ones() const;

  private:
    std::vector<std::uint8_t> values_;
    PromiseClass declared_;
    std::string label_;
};

/// Checks the promise (population count 0, n, or n/2) and that the verified
/// class matches the declared one; throws std::invalid_argument with the
/// offending count otherwise.
PromiseClass validate_promise(const OracleSpec& f);

enum class FunctionKind { const0, const1, step, parity_bins, random_balanced };

const char* to_string(FunctionKind k);
FunctionKind parse_function_kind(const std::string& name);

/// Test-corpus generator. width is the bin width for parity_bins (must divide
/// n_points into an even number of bins); seed drives random_balanced
/// reproducibly. Every returned spec passes validate_promise.
OracleSpec make_function(FunctionKind kind, const QuadratureGrid& grid, std::size_t width = 0,
                         std::uint64_t seed = 0);

/// {"label": ..., "declared_class": ..., "values": "0101..."} for run records.
std::string to_json(const OracleSpec& f);

/// Joint state over (grid point j, ancilla bit c, Bob bit b); the oracle-stage
/// entanglement lives here. Immutable value, unit norm.
class HybridState {
  public:
    /// cv (x) |ancilla> (x) |bob>.
    static HybridState product(const CvState& cv, const DualRailState& ancilla,
                               const DualRailState& bob);

    HybridState(GridPtr grid, std::vector<cplx> amplitudes);

    const QuadratureGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t points() const { return grid_->size(); }
    cplx amplitude(std::size_t j, int c, int b) const {
        return amps_[j * 4 + static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(b)];
    }
    std::span<const cplx> amplitudes() const { return amps_; }

    double norm() const;
    /// Probability carried by ancilla bit c.
    double ancilla_population(int c) const;

  private:
    GridPtr grid_;
    std::vector<cplx> amps_;
};

/// The oracle reduced to its net effect: the qunat passes the oracle
/// unchanged except for the phase (-1)^{f(q)} kicked back from Bob's
/// register. Bob must hold the kickback eigenstate (|0> - |1>)/sqrt(2) to
/// within infidelity 1e-9 and is returned untouched.
std::pair<CvState, DualRailState> apply_oracle_semiclassical(const CvState& cv,
                                                             const DualRailState& bob,
                                                             const OracleSpec& f);

/// Fully coherent ancilla model of the feed-forward oracle. Step 1 prepares
/// the ancilla to |f(q_j)> on each grid branch (controlled preparation);
/// step 2 applies the fixed ancilla->Bob CNOT on every branch. The ancilla
/// slice must be cleared (|0>_c) on input. No measurement of the CV register
/// occurs.
HybridState apply_oracle_coherent(const HybridState& state, const OracleSpec& f);

/// Reverses the controlled preparation (it is self-inverse), returning the
/// ancilla to |0> on all branches. Supplying a different f than the one used
/// by apply_oracle_coherent leaves residual ancilla population and is
/// reported as an error.
HybridState uncompute_ancilla(const HybridState& state, const OracleSpec& f);

struct DiscardReport {
    double cv_purity;          // purity of the reduced CV (x) Bob state
    double window_prob_shift;  // mixture window probability minus the coherent one
};

/// Consequence of discarding, rather than uncomputing, the entangled ancilla:
/// purity of the reduced CV (x) Bob state, and the change in the final window
/// probability (inverse Fourier then position window) relative to the
/// semiclassical path.
DiscardReport ancilla_discard_study(const HybridState& state, const MeasurementWindow& window);

/// <target| rho_bob |target> with rho_bob the reduced Bob density matrix.
double bob_fidelity_with(const HybridState& state, const DualRailState& target);

/// |<cv (x) ancilla_bit (x) bob | state>|^2.
double product_fidelity(const HybridState& state, const CvState& cv, int ancilla_bit,
                        const DualRailState& bob);

/// <cv component| of the state conditioned on the ancilla basis bit and Bob
/// projected onto bob; not renormalized.
CvState cv_conditioned(const HybridState& state, int ancilla_bit, const DualRailState& bob);

/// Purity of the reduced CV state after tracing out ancilla and Bob.
double reduced_cv_purity(const HybridState& state);

}  // namespace hdj
