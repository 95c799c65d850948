#pragma once

#include "acirc/boolcircuit.hpp"
#include "acirc/circuit.hpp"
#include "acirc/elim.hpp"
#include "acirc/errors.hpp"
#include "acirc/identity.hpp"
#include "acirc/matrix.hpp"
#include "acirc/modular.hpp"
#include "acirc/pochhammer.hpp"
#include "acirc/poly.hpp"
#include "acirc/ratfunc.hpp"
#include "acirc/rational.hpp"
#include "acirc/rng.hpp"
#include "acirc/semantics.hpp"
#include "acirc/transforms.hpp"
#include "acirc/varnames.hpp"
