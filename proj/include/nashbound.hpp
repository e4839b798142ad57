#pragma once

#include "nashbound/barta.hpp"
#include "nashbound/enclosing_ball.hpp"
#include "nashbound/errors.hpp"
#include "nashbound/generators.hpp"
#include "nashbound/inequality.hpp"
#include "nashbound/mesh.hpp"
#include "nashbound/noff.hpp"
#include "nashbound/operators.hpp"
#include "nashbound/spectral.hpp"
