#pragma once

#include "fockrat/approx.hpp"
#include "fockrat/dyadic.hpp"
#include "fockrat/fermion.hpp"
#include "fockrat/notation.hpp"
#include "fockrat/occupation.hpp"
#include "fockrat/rewrite.hpp"
#include "fockrat/superposition.hpp"
