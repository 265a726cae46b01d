#pragma once

#include "minblock/blocking.hpp"
#include "minblock/classify.hpp"
#include "minblock/codes.hpp"
#include "minblock/errors.hpp"
#include "minblock/geometry.hpp"
#include "minblock/gf.hpp"
#include "minblock/group.hpp"
#include "minblock/io.hpp"
#include "minblock/search.hpp"
