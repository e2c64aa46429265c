#pragma once

#include "oto/errors.hpp"
#include "oto/model.hpp"
#include "oto/enumeration.hpp"
#include "oto/matrices.hpp"
#include "oto/simplex.hpp"
#include "oto/optimize.hpp"
#include "oto/capacity.hpp"
#include "oto/bounds.hpp"
#include "oto/instancegen.hpp"
