#pragma once

#include "qdiss/algebra.hpp"
#include "qdiss/analytic.hpp"
#include "qdiss/enriched.hpp"
#include "qdiss/error.hpp"
#include "qdiss/functors.hpp"
#include "qdiss/io.hpp"
#include "qdiss/lattice.hpp"
#include "qdiss/properties.hpp"
#include "qdiss/quantale.hpp"
#include "qdiss/quantaloid.hpp"
#include "qdiss/report.hpp"
#include "qdiss/search.hpp"
#include "qdiss/suites.hpp"
#include "qdiss/zoo.hpp"

namespace qdiss {
inline constexpr const char* kVersion = "0.1.0";
}
