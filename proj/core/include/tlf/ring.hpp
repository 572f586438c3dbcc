#pragma once

#include "tlf/fq.hpp"

namespace tlf {

// Customization points used by the generic containers. Each coefficient ring
// overloads these; templates call them unqualified so ADL picks the right one.

inline bool ring_is_unit(const Fq& a) { return a.is_unit(); }
inline Fq ring_inv(const Fq& a) { return a.inv(); }

} // namespace tlf
