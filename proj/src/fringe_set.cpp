#include "phasevar/fringe_set.hpp"

#include <cmath>

namespace phasevar {

FringeSet FringeSet::from_quadrature(ScalarField ic, ScalarField is, std::string provenance) {
    require_same_grid(ic.grid(), is.grid(), "fringe pair");
    ScalarField b(ic.grid());
    auto c = ic.values();
    auto s = is.values();
    auto out = b.values();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::hypot(c[k], s[k]);
    return FringeSet{std::move(ic), std::move(is), std::move(b), std::move(provenance), std::nullopt};
}

void FringeSet::validate() const {
    require_same_grid(ic.grid(), is.grid(), "fringe pair");
    require_same_grid(ic.grid(), b.grid(), "fringe amplitude");
}

FringeSet FringeSet::on_pixel_grid() const {
    const GridSpec px = GridSpec::pixels(grid().m, grid().n);
    return FringeSet{ic.regridded(px), is.regridded(px), b.regridded(px), provenance, noise_seed};
}

}  // namespace phasevar
