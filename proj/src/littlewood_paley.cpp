#include "swlab/littlewood_paley.hpp"

#include "swlab/errors.hpp"

#include <cmath>
#include <string>

namespace swlab {

namespace {

void require_in_band(const GridSpec& grid, int j, int upper) {
    if (j < grid.j_min() || j > upper) {
        throw DomainError("dyadic block index " + std::to_string(j) + " outside resolved band [" +
                          std::to_string(grid.j_min()) + ", " + std::to_string(upper) + "]");
    }
}

}  // namespace

double block_symbol(double rho, int j) { return lp_symbol(rho, j); }

double low_pass_symbol(double rho, int j, int j_min) {
    if (j <= j_min) return 0.0;
    return smooth_cutoff(std::ldexp(rho, -j)) - smooth_cutoff(std::ldexp(rho, -j_min));
}

Field2D dyadic_block(const Field2D& f, int j) {
    require_in_band(f.grid(), j, f.grid().j_max());
    return apply_radial_multiplier(f, [j](double rho) { return block_symbol(rho, j); });
}

VectorField2D dyadic_block(const VectorField2D& u, int j) { return {dyadic_block(u[0], j), dyadic_block(u[1], j)}; }

Field2D low_freq_cutoff(const Field2D& f, int j) {
    require_in_band(f.grid(), j, f.grid().j_max() + 1);
    const int j_min = f.grid().j_min();
    return apply_radial_multiplier(f, [j, j_min](double rho) { return low_pass_symbol(rho, j, j_min); });
}

std::vector<Field2D> dyadic_decomposition(const Field2D& f) {
    std::vector<Field2D> blocks;
    blocks.reserve(static_cast<std::size_t>(f.grid().band_size()));
    for (int j = f.grid().j_min(); j <= f.grid().j_max(); ++j) blocks.push_back(dyadic_block(f, j));
    return blocks;
}

BonyParts bony_parts(const Field2D& f, const Field2D& g) {
    if (f.grid() != g.grid()) throw DomainError("bony_parts: fields live on different grids");
    if (!is_dealiased(f) || !is_dealiased(g)) {
        throw DomainError("bony_parts: inputs carry modes beyond the dealias cutoff; product would alias");
    }
    const GridSpec& grid = f.grid();
    const int count = grid.band_size();
    std::vector<ComplexArray> fb, gb;
    fb.reserve(static_cast<std::size_t>(count));
    gb.reserve(static_cast<std::size_t>(count));
    for (int j = grid.j_min(); j <= grid.j_max(); ++j) {
        fb.push_back(to_physical(dyadic_block(f, j)).values());
        gb.push_back(to_physical(dyadic_block(g, j)).values());
    }

    const int n = grid.points();
    ComplexArray low_high = ComplexArray::Zero(n, n);
    ComplexArray high_low = ComplexArray::Zero(n, n);
    ComplexArray remainder = ComplexArray::Zero(n, n);
    ComplexArray f_low = ComplexArray::Zero(n, n);  // S_{j-1} f
    ComplexArray g_low = ComplexArray::Zero(n, n);
    for (int idx = 0; idx < count; ++idx) {
        if (idx >= 2) {
            f_low += fb[static_cast<std::size_t>(idx - 2)];
            g_low += gb[static_cast<std::size_t>(idx - 2)];
        }
        const auto& fj = fb[static_cast<std::size_t>(idx)];
        const auto& gj = gb[static_cast<std::size_t>(idx)];
        low_high += f_low * gj;
        high_low += g_low * fj;
        ComplexArray g_tilde = gj;
        if (idx > 0) g_tilde += gb[static_cast<std::size_t>(idx - 1)];
        if (idx + 1 < count) g_tilde += gb[static_cast<std::size_t>(idx + 1)];
        remainder += fj * g_tilde;
    }

    auto finish = [&grid](ComplexArray values) {
        return dealias(to_spectral(Field2D(grid, Representation::physical, std::move(values))));
    };
    return {finish(std::move(low_high)), finish(std::move(high_low)), finish(std::move(remainder))};
}

}  // namespace swlab
