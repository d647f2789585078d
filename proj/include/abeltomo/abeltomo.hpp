#pragma once

#include "abeltomo/group.hpp"
#include "abeltomo/weyl.hpp"
#include "abeltomo/char_map.hpp"
#include "abeltomo/tomogram.hpp"
#include "abeltomo/channel.hpp"
#include "abeltomo/continuum.hpp"
#include "abeltomo/random.hpp"
