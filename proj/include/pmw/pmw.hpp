#pragma once

#include "pmw/admissibility.hpp"
#include "pmw/error.hpp"
#include "pmw/euclid.hpp"
#include "pmw/gamma_vector.hpp"
#include "pmw/harmonics.hpp"
#include "pmw/parallel.hpp"
#include "pmw/quadrature.hpp"
#include "pmw/rot_deriv.hpp"
#include "pmw/special_fn.hpp"
#include "pmw/transform.hpp"
#include "pmw/wavelets.hpp"
