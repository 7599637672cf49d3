#pragma once

#include <span>
#include <string>

#include "coarsedim/families.hpp"

namespace coarsedim::svg {

using families::BoxFamily;
using space::Int;
using space::Window;

/// Byte-deterministic SVG of a level-2 window: the two lattice line grids
/// underneath, then each family's member boxes in a fixed 8-color palette by
/// family index. Only level 2 is supported.
std::string render_svg(std::span<const BoxFamily> fams, const Window& w);

}  // namespace coarsedim::svg
