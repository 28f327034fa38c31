#pragma once

#include "lsc/coding.hpp"
#include "lsc/codes.hpp"
#include "lsc/container.hpp"
#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/linalg.hpp"
#include "lsc/prng.hpp"
#include "lsc/rational.hpp"
#include "lsc/scheme.hpp"
#include "lsc/secrecy.hpp"
#include "lsc/source.hpp"
