#pragma once

#include "pi/errors.hpp"
#include "pi/type.hpp"
#include "pi/value.hpp"
#include "pi/comb.hpp"
#include "pi/syntax.hpp"
#include "pi/typecheck.hpp"
#include "pi/eval.hpp"
#include "pi/finite.hpp"
#include "pi/models.hpp"
#include "pi/arrows.hpp"
#include "pi/quantum.hpp"
#include "pi/turing.hpp"
