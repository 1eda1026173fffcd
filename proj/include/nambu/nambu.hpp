#pragma once

// Structure-preserving splitting integrators for the three-variable
// Nambu-mechanical harmonic oscillator, with exact symbolic machinery for
// their modified generators and shadow Hamiltonians.

#include "nambu/bch.hpp"
#include "nambu/brackets.hpp"
#include "nambu/errors.hpp"
#include "nambu/fields.hpp"
#include "nambu/flows.hpp"
#include "nambu/observables.hpp"
#include "nambu/poly.hpp"
#include "nambu/rational.hpp"
#include "nambu/scheme.hpp"
#include "nambu/shadow_consistency.hpp"
