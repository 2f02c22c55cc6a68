#pragma once

#include "vibronic/dynamics.hpp"
#include "vibronic/errors.hpp"
#include "vibronic/fock.hpp"
#include "vibronic/linalg.hpp"
#include "vibronic/montecarlo.hpp"
#include "vibronic/parallel.hpp"
#include "vibronic/rng.hpp"
#include "vibronic/state.hpp"
#include "vibronic/tomography.hpp"
#include "vibronic/wigner.hpp"
