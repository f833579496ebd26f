#pragma once

#include "swlab/solver.hpp"

#include <filesystem>

namespace swlab {

/// Binary trajectory file, little-endian (layout in docs/formats.md):
///   "SWLTRAJ1", u32 version, u32 N, f64 L, f64 dt, u32 h_form, u32 representation,
///   u64 M, M x f64 times, then per sample h, u1, u2 as N x N complex128 (re, im),
///   row-major with the x1 index outer.
constexpr std::uint32_t kCheckpointVersion = 1;

struct LoadedTrajectory {
    Trajectory trajectory;
    HForm h_form = HForm::primitive;
};

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj, HForm h_form,
                      Representation representation = Representation::spectral);
/// Samples come back in the representation they were written in.
LoadedTrajectory read_trajectory(const std::filesystem::path& path);

}  // namespace swlab
