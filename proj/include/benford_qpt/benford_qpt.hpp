#pragma once

#include "benford_qpt/benford.hpp"
#include "benford_qpt/errors.hpp"
#include "benford_qpt/quadrature.hpp"
#include "benford_qpt/quantum_state.hpp"
#include "benford_qpt/scanner.hpp"
#include "benford_qpt/xy_model.hpp"
