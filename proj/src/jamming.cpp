#include "isac/jamming.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isac {

namespace {

std::size_t floor_ratio(double numerator, double denominator, const char* what) {
    if (!(denominator > 0.0) || !(numerator > 0.0))
        throw std::invalid_argument(std::string(what) + ": nonpositive timing");
    // Nudge absorbs the one-ulp downward drift of decimal timing literals
    // (e.g. 4e-6 / 1e-7 lands just below 40) without disturbing true floors.
    return static_cast<std::size_t>(std::floor(numerator / denominator + 1e-9));
}

bool is_identity(std::size_t size, const std::vector<TransferMatrix::Coord>& coords) {
    if (coords.size() != size) return false;
    for (std::size_t i = 0; i < size; ++i)
        if (coords[i].first != i || coords[i].second != i) return false;
    return true;
}

}  // namespace

std::size_t JammerSpec::chip_length() const {
    const std::size_t c = floor_ratio(intercept_time, sample_interval, "chip_length");
    if (c == 0) throw std::invalid_argument("jammer spec: chip length is zero");
    return c;
}

std::size_t JammerSpec::segment_length() const {
    const std::size_t ls = floor_ratio(repeat_period, sample_interval, "segment_length");
    if (ls == 0) throw std::invalid_argument("jammer spec: segment length is zero");
    return ls;
}

std::size_t rrj_repeats_from_timing(double repeat_period, double intercept_time) {
    const std::size_t ratio =
        floor_ratio(repeat_period, intercept_time, "rrj_repeats_from_timing");
    if (ratio < 2)
        throw std::invalid_argument(
            "rrj timing: repeat period leaves no room for a replay");
    return ratio - 1;
}

TransferMatrix::TransferMatrix(std::size_t size, std::vector<Coord> coords)
    : size_(size), coords_(std::move(coords)) {
    if (size_ < 2) throw std::invalid_argument("transfer matrix: size < 2");
    std::sort(coords_.begin(), coords_.end());
    for (const auto& [r, c] : coords_)
        if (r >= size_ || c >= size_)
            throw std::invalid_argument("transfer matrix: coordinate out of range");
    if (std::adjacent_find(coords_.begin(), coords_.end()) != coords_.end())
        throw std::invalid_argument("transfer matrix: duplicate coordinate");
    if (is_identity(size_, coords_))
        throw std::invalid_argument("transfer matrix: identity is not a jammer");
}

cvec TransferMatrix::apply(const cvec& x) const {
    if (x.size() != size_)
        throw std::invalid_argument("transfer matrix apply: dimension mismatch");
    cvec y(size_, cdouble(0.0));
    for (const auto& [r, c] : coords_) y[r] += x[c];
    return y;
}

cvec TransferMatrix::apply_adjoint(const cvec& y) const {
    if (y.size() != size_)
        throw std::invalid_argument("transfer matrix adjoint: dimension mismatch");
    cvec out(size_, cdouble(0.0));
    for (const auto& [r, c] : coords_) out[c] += y[r];
    return out;
}

TransferMatrix build_pprj(const JammerSpec& spec) {
    if (spec.kind != JammerKind::PPRJ)
        throw std::invalid_argument("build_pprj: spec kind is not PPRJ");
    const std::size_t L = spec.length;
    const std::size_t c = spec.chip_length();
    const std::size_t M = spec.repeats;
    if (M == 0) throw std::invalid_argument("build_pprj: zero repeats");
    if (M * c > L)
        throw std::invalid_argument("build_pprj: repeats * chip length exceeds L");

    std::vector<TransferMatrix::Coord> coords;
    coords.reserve(M * c);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t i = 0; i < c; ++i)
            coords.emplace_back(static_cast<std::uint32_t>(m * c + i),
                                static_cast<std::uint32_t>(i));
    return TransferMatrix(L, std::move(coords));
}

TransferMatrix build_rrj(const JammerSpec& spec) {
    if (spec.kind != JammerKind::RRJ)
        throw std::invalid_argument("build_rrj: spec kind is not RRJ");
    const std::size_t L = spec.length;
    const std::size_t c = spec.chip_length();
    const std::size_t Ls = spec.segment_length();
    const std::size_t M = spec.repeats;
    if (M == 0) throw std::invalid_argument("build_rrj: zero repeats");
    if (M * c > Ls)
        throw std::invalid_argument(
            "build_rrj: repeats * chip length exceeds the segment length");
    const std::size_t Q = L / Ls;
    if (Q == 0) throw std::invalid_argument("build_rrj: segment longer than L");

    std::vector<TransferMatrix::Coord> coords;
    coords.reserve(Q * M * c);
    for (std::size_t q = 0; q < Q; ++q) {
        const std::size_t o = q * Ls;
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t i = 0; i < c; ++i)
                coords.emplace_back(static_cast<std::uint32_t>(o + m * c + i),
                                    static_cast<std::uint32_t>(o + i));
    }
    return TransferMatrix(L, std::move(coords));
}

TransferMatrix build_transfer_matrix(const JammerSpec& spec) {
    return spec.kind == JammerKind::PPRJ ? build_pprj(spec) : build_rrj(spec);
}

}  // namespace isac
