#pragma once

#include "topdrop/perm.hpp"
#include "topdrop/necklace.hpp"
#include "topdrop/orbit.hpp"
#include "topdrop/parity.hpp"
#include "topdrop/counting.hpp"
#include "topdrop/census.hpp"
