#pragma once

#include "budget.hpp"
#include "constructions.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "exact_cover.hpp"
#include "experiments.hpp"
#include "finite_field.hpp"
#include "hypergraph.hpp"
#include "invariants.hpp"
#include "io.hpp"
#include "probes.hpp"
#include "rational.hpp"
#include "solver.hpp"
