#pragma once

#include "undersolve/convergence.hpp"
#include "undersolve/error.hpp"
#include "undersolve/generate.hpp"
#include "undersolve/io.hpp"
#include "undersolve/iterate.hpp"
#include "undersolve/matrix.hpp"
#include "undersolve/partition.hpp"
#include "undersolve/rref.hpp"
