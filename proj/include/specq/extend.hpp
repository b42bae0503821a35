#ifndef SPECQ_EXTEND_HPP
#define SPECQ_EXTEND_HPP

#include <utility>
#include <vector>

#include "specq/fields.hpp"

namespace specq {

// Lipschitz extension of finitely many samples: McShane extension of each
// embedded coordinate, retraction back onto the image, then the cone
// projection to |.| <= max over the data, so the sup bound is exact.
GridField lipschitz_extend(const std::vector<std::pair<Vec, SpecPoint>>& data,
                           const GridDomain& dom);

}  // namespace specq

#endif
