#pragma once

#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"
#include "qbary/lattice.hpp"
#include "qbary/hull.hpp"
#include "qbary/polytope.hpp"
#include "qbary/ehrhart.hpp"
#include "qbary/expansion.hpp"
#include "qbary/toricrr.hpp"
#include "qbary/stability.hpp"
#include "qbary/io.hpp"
