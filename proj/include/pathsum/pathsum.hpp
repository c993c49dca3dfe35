#pragma once

#include "pathsum/bench.hpp"
#include "pathsum/circuit.hpp"
#include "pathsum/gate_semantics.hpp"
#include "pathsum/generators.hpp"
#include "pathsum/pathsum_engine.hpp"
#include "pathsum/rng.hpp"
#include "pathsum/statevector.hpp"
#include "pathsum/text_io.hpp"
