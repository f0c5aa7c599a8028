#pragma once

#include <string>

#include "trackforge/track.hpp"

namespace trackforge {

// Presentation only: the grid path, the quadrant signs around each double
// point and the marked points; with `diagram`, also the band outline and a
// dot per crossing coloured by sign.
std::string render_svg(const LabelledInterval& c, bool diagram);

}  // namespace trackforge
