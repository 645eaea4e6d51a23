#pragma once

// Umbrella header: truncated Fock-space tools, resonant two-level dynamics,
// closed-form entropies, and the scenario runner.

#include "dynamics.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "fock.hpp"
#include "scenario.hpp"
