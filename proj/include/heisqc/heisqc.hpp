#ifndef HEISQC_HEISQC_HPP
#define HEISQC_HEISQC_HPP

#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"
#include "heisqc/numerics.hpp"
#include "heisqc/holomorphic.hpp"
#include "heisqc/domain.hpp"
#include "heisqc/density.hpp"
#include "heisqc/curves.hpp"
#include "heisqc/qcmaps.hpp"
#include "heisqc/modulus.hpp"
#include "heisqc/lift_builder.hpp"
#include "heisqc/sampling.hpp"

#endif  // HEISQC_HEISQC_HPP
