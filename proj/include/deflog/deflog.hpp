#pragma once

#include "formula.hpp"
#include "parse.hpp"
#include "sat.hpp"
#include "theory.hpp"
#include "defaults.hpp"
#include "transform.hpp"
#include "represent.hpp"
#include "cwa.hpp"
#include "io.hpp"
