#pragma once

#include "forestpat/avoid.hpp"
#include "forestpat/bigint.hpp"
#include "forestpat/bijections.hpp"
#include "forestpat/clusters.hpp"
#include "forestpat/config.hpp"
#include "forestpat/enumerate.hpp"
#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"
#include "forestpat/forest_young.hpp"
#include "forestpat/nice_twigs.hpp"
#include "forestpat/pattern.hpp"
#include "forestpat/recurrences.hpp"
#include "forestpat/serialize.hpp"
