/**
 * @file hilbres.hpp
 * @brief Umbrella header for the library (the CLI front end is separate).
 */
#pragma once

#include "caps.hpp"
#include "coxeter.hpp"
#include "error.hpp"
#include "hilbstrata.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "numberfield.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "permaction.hpp"
#include "pipeline.hpp"
#include "rational.hpp"
#include "reflect.hpp"
#include "sampling.hpp"
#include "serialize.hpp"
#include "toruslat.hpp"
