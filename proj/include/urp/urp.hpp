#pragma once

#include "urp/decompose.hpp"
#include "urp/density.hpp"
#include "urp/difference.hpp"
#include "urp/errors.hpp"
#include "urp/finite_set.hpp"
#include "urp/integer.hpp"
#include "urp/oracle.hpp"
#include "urp/radix.hpp"
