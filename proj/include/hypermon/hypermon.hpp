#pragma once

#include "hypermon/circuit.hpp"
#include "hypermon/engine.hpp"
#include "hypermon/errors.hpp"
#include "hypermon/monitor.hpp"
#include "hypermon/oracle.hpp"
#include "hypermon/parse.hpp"
#include "hypermon/random_gen.hpp"
#include "hypermon/syntax.hpp"
#include "hypermon/trace.hpp"
