#pragma once

// Umbrella header. io.hpp is left out: it pulls in nlohmann/json.

#include "hoca/decide.hpp"
#include "hoca/dynamics.hpp"
#include "hoca/error.hpp"
#include "hoca/laurent.hpp"
#include "hoca/lmatrix.hpp"
#include "hoca/models.hpp"
#include "hoca/modring.hpp"
#include "hoca/oracle.hpp"
#include "hoca/rational.hpp"
