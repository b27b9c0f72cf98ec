#pragma once

#include "fibra/error.hpp"
#include "fibra/rational.hpp"
#include "fibra/lattice.hpp"
#include "fibra/fiber.hpp"
#include "fibra/checks.hpp"
#include "fibra/resolution.hpp"
#include "fibra/cyclic_quotient.hpp"
#include "fibra/basechange.hpp"
#include "fibra/invariants.hpp"
#include "fibra/heights.hpp"
#include "fibra/io.hpp"
#include "fibra/report.hpp"
