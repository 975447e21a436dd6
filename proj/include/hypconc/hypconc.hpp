// hypconc.hpp -- umbrella header.

#pragma once

#include "specfun.hpp"
#include "quadrature.hpp"
#include "hyperbolic.hpp"
#include "linalg.hpp"
#include "bergman.hpp"
#include "transforms.hpp"
#include "concentration.hpp"
#include "stability.hpp"
#include "asymptotics.hpp"
#include "limits.hpp"
#include "io.hpp"
