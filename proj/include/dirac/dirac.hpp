// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "algebra.hpp"
#include "associated.hpp"
#include "format.hpp"
#include "mode_spinors.hpp"
#include "momentum_operators.hpp"
#include "polarization.hpp"
#include "quadrature.hpp"
#include "random.hpp"
#include "types.hpp"
#include "verify.hpp"
#include "wavepacket.hpp"
