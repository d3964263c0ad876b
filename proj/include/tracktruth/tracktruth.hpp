#pragma once

#include "tracktruth/core.hpp"
#include "tracktruth/preorder.hpp"
#include "tracktruth/revision.hpp"
#include "tracktruth/streams.hpp"
#include "tracktruth/telltale.hpp"
#include "tracktruth/verifier.hpp"
