#pragma once

// Umbrella header.

#include "rational.hpp"   // IWYU pragma: export
#include "matrix.hpp"     // IWYU pragma: export
#include "linalg.hpp"     // IWYU pragma: export
#include "variety.hpp"    // IWYU pragma: export
#include "blowup.hpp"     // IWYU pragma: export
#include "pseudo_iso.hpp" // IWYU pragma: export
#include "ma.hpp"         // IWYU pragma: export
#include "io.hpp"         // IWYU pragma: export
#include "expr.hpp"       // IWYU pragma: export
#include "cli.hpp"        // IWYU pragma: export
