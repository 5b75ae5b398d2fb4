#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "isac/types.hpp"

namespace isac {

/// Repeater timing pattern of the modulated jammer.
enum class JammerKind {
    PPRJ,  ///< partial pulse repeater: one intercepted chip replayed M times
    RRJ,   ///< repetitive repeater: chip replayed within each sampling period
};

/// Timing description of a repeater jammer.
///
/// Chip length c = floor(intercept_time / sample_interval); the RRJ period
/// length is L_s = floor(repeat_period / sample_interval).
struct JammerSpec {
    JammerKind kind = JammerKind::PPRJ;
    double sample_interval = 0.0;  ///< t_s, seconds
    double intercept_time = 0.0;   ///< T_L, seconds
    double repeat_period = 0.0;    ///< T_s, seconds (RRJ only)
    std::size_t repeats = 0;       ///< replays per intercept (M1) or per period (M2)
    std::size_t length = 0;        ///< sequence length L

    /// floor(T_L / t_s); throws std::invalid_argument when it comes out zero.
    std::size_t chip_length() const;
    /// floor(T_s / t_s) for RRJ; throws std::invalid_argument when zero.
    std::size_t segment_length() const;
};

/// Repeat count consistent with RRJ timing: floor(T_s / T_L) - 1 replays fit
/// in a period after the intercept listen window.
std::size_t rrj_repeats_from_timing(double repeat_period, double intercept_time);

/// Sparse binary L x L operator mapping the transmit waveform to the
/// jammer's retransmission. Entries are implicit ones, stored as (row, col)
/// coordinates in sorted row-major order. Immutable after construction;
/// concurrent reads are safe.
class TransferMatrix {
public:
    using Coord = std::pair<std::uint32_t, std::uint32_t>;

    TransferMatrix(std::size_t size, std::vector<Coord> coords);

    std::size_t size() const { return size_; }
    std::size_t nnz() const { return coords_.size(); }
    const std::vector<Coord>& coords() const { return coords_; }

    /// y = J x; O(nnz).
    cvec apply(const cvec& x) const;
    /// out = J^H y (real binary J, so the adjoint is the transpose); O(nnz).
    cvec apply_adjoint(const cvec& y) const;

private:
    std::size_t size_ = 0;
    std::vector<Coord> coords_;
};

/// Partial-pulse repeater: M stacked c x c identity blocks occupying the top
/// rows of the leftmost c columns. Throws std::invalid_argument when
/// M * c > L or c = 0, and when the result degenerates to the identity.
TransferMatrix build_pprj(const JammerSpec& spec);

/// Repetitive repeater: block-diagonal with Q = floor(L / L_s) copies of a
/// block of M stacked c x c identities; rows past Q * L_s stay zero.
/// Throws std::invalid_argument when L_s = 0, M * c > L_s, Q = 0, or the
/// result degenerates to the identity.
TransferMatrix build_rrj(const JammerSpec& spec);

/// Dispatch on spec.kind.
TransferMatrix build_transfer_matrix(const JammerSpec& spec);

}  // namespace isac
