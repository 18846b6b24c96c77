#pragma once

#include "mhhea/bench.hpp"
#include "mhhea/cipher.hpp"
#include "mhhea/container.hpp"
#include "mhhea/error.hpp"
#include "mhhea/lfsr.hpp"
#include "mhhea/microarch.hpp"
#include "mhhea/types.hpp"
