#pragma once

#include "gwpt/cohomology.hpp"
#include "gwpt/gw_algebra.hpp"
#include "gwpt/pt_algebra.hpp"
#include "gwpt/qrational.hpp"
#include "gwpt/wscalar.hpp"

#include <ostream>

namespace gwpt {

inline void PrintTo(const PtElement& x, std::ostream* os) { *os << x.str(); }
inline void PrintTo(const GwElement& x, std::ostream* os) { *os << x.str(); }
inline void PrintTo(const QRational& x, std::ostream* os) { *os << x.str(); }
inline void PrintTo(const Poly& x, std::ostream* os) { *os << x.str(); }
inline void PrintTo(const WScalar& x, std::ostream* os) { *os << x.str(); }
inline void PrintTo(const CohClass& x, std::ostream* os) { *os << x.str(); }

}  // namespace gwpt
