#pragma once

#include "ngnep/amp.hpp"
#include "ngnep/block_vector.hpp"
#include "ngnep/diagnostics.hpp"
#include "ngnep/harness.hpp"
#include "ngnep/library.hpp"
#include "ngnep/outer_loops.hpp"
#include "ngnep/penalties.hpp"
#include "ngnep/problem.hpp"
#include "ngnep/problem_io.hpp"
#include "ngnep/simple_set.hpp"
