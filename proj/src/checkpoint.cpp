#include "swlab/checkpoint.hpp"

#include "swlab/errors.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace swlab {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic{'S', 'W', 'L', 'T', 'R', 'A', 'J', '1'};

template <typename T>
void put(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw IoError("read_trajectory: truncated file " + path.string());
    return value;
}

using RowMajorComplex = Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void put_field(std::ofstream& out, const Field2D& f, Representation rep) {
    const Field2D g = rep == Representation::spectral ? as_spectral(f) : as_physical(f);
    const RowMajorComplex rows = g.values();
    out.write(reinterpret_cast<const char*>(rows.data()),
              static_cast<std::streamsize>(rows.size() * sizeof(std::complex<double>)));
}

Field2D get_field(std::ifstream& in, const GridSpec& grid, Representation rep, const std::filesystem::path& path) {
    RowMajorComplex rows(grid.points(), grid.points());
    in.read(reinterpret_cast<char*>(rows.data()),
            static_cast<std::streamsize>(rows.size() * sizeof(std::complex<double>)));
    if (!in) throw IoError("read_trajectory: truncated sample data in " + path.string());
    return {grid, rep, ComplexArray(rows)};
}

}  // namespace

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj, HForm h_form,
                      Representation representation) {
    if (traj.u.empty()) throw DomainError("write_trajectory: empty trajectory");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_trajectory: cannot open " + path.string() + " for writing");
    const GridSpec& grid = traj.u[0].grid();
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, kCheckpointVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.points()));
    put<double>(out, grid.period_scale());
    put<double>(out, traj.dt);
    put<std::uint32_t>(out, h_form == HForm::primitive ? 0u : 1u);
    put<std::uint32_t>(out, representation == Representation::physical ? 0u : 1u);
    put<std::uint64_t>(out, traj.u.size());
    for (double t : traj.u.times()) put<double>(out, t);
    for (std::size_t m = 0; m < traj.u.size(); ++m) {
        put_field(out, traj.h[m], representation);
        put_field(out, traj.u[m][0], representation);
        put_field(out, traj.u[m][1], representation);
    }
    if (!out) throw IoError("write_trajectory: write failed for " + path.string());
}

LoadedTrajectory read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_trajectory: cannot open " + path.string());
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw IoError("read_trajectory: " + path.string() + " is not a trajectory file");
    const auto version = get<std::uint32_t>(in, path);
    if (version != kCheckpointVersion) {
        throw IoError("read_trajectory: unsupported version " + std::to_string(version));
    }
    const auto n = get<std::uint32_t>(in, path);
    const auto L = get<double>(in, path);
    const auto dt = get<double>(in, path);
    const auto form = get<std::uint32_t>(in, path);
    const auto rep_flag = get<std::uint32_t>(in, path);
    const auto count = get<std::uint64_t>(in, path);
    if (form > 1 || rep_flag > 1) throw IoError("read_trajectory: corrupt header in " + path.string());

    const GridSpec grid(L, static_cast<int>(n));
    const Representation rep = rep_flag == 1 ? Representation::spectral : Representation::physical;
    std::vector<double> times(count);
    for (auto& t : times) t = get<double>(in, path);

    LoadedTrajectory out;
    out.h_form = form == 0 ? HForm::primitive : HForm::conservative;
    Trajectory& traj = out.trajectory;
    traj.dt = dt;
    for (std::uint64_t m = 0; m < count; ++m) {
        Field2D h = get_field(in, grid, rep, path);
        Field2D u1 = get_field(in, grid, rep, path);
        Field2D u2 = get_field(in, grid, rep, path);
        const VectorField2D up = as_physical(VectorField2D(u1, u2));
        traj.max_abs_h.push_back(as_physical(h).values().abs().maxCoeff());
        traj.cfl.push_back((up[0].values().abs2() + up[1].values().abs2()).sqrt().maxCoeff() * dt / grid.spacing());
        traj.h.append(times[m], std::move(h));
        traj.u.append(times[m], VectorField2D(std::move(u1), std::move(u2)));
    }
    return out;
}

}  // namespace swlab
