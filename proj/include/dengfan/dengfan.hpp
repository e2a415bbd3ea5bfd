#pragma once

// Umbrella header: ro-vibrational spectra and expectation values of
// diatomic molecules in the shifted Deng-Fan potential, with a numerical
// eigensolver and quantization-rule machinery for cross-checks.

#include "dengfan/constants.hpp"
#include "dengfan/errors.hpp"
#include "dengfan/expectation.hpp"
#include "dengfan/fixtures.hpp"
#include "dengfan/format.hpp"
#include "dengfan/molecule.hpp"
#include "dengfan/potential.hpp"
#include "dengfan/quantize.hpp"
#include "dengfan/radial_solver.hpp"
#include "dengfan/report.hpp"
#include "dengfan/spectrum.hpp"
