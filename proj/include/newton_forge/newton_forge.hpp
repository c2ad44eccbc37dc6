#pragma once

#include "newton_forge/arith.hpp"
#include "newton_forge/cyclotomic.hpp"
#include "newton_forge/dynamics.hpp"
#include "newton_forge/error.hpp"
#include "newton_forge/finite_field.hpp"
#include "newton_forge/hodge.hpp"
#include "newton_forge/lattice.hpp"
#include "newton_forge/oracle.hpp"
#include "newton_forge/polygon.hpp"
