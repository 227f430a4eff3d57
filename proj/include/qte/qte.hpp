#pragma once

// Umbrella header: the whole library in one include.

#include "qte/analysis.hpp"
#include "qte/entanglement.hpp"
#include "qte/errors.hpp"
#include "qte/matrix.hpp"
#include "qte/spin_model.hpp"
#include "qte/sweep_io.hpp"
#include "qte/thermal.hpp"
