#pragma once

// Umbrella header: the whole library.

#include "channels.hpp"    // IWYU pragma: export
#include "extremal.hpp"    // IWYU pragma: export
#include "fidelity.hpp"    // IWYU pragma: export
#include "io.hpp"          // IWYU pragma: export
#include "numerics.hpp"    // IWYU pragma: export
#include "rng.hpp"         // IWYU pragma: export
#include "states.hpp"      // IWYU pragma: export
#include "verify.hpp"      // IWYU pragma: export
