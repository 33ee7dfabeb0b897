// Umbrella header: the full public surface of the library.
#pragma once

#include "chromaflux/errors.hpp"
#include "chromaflux/rng.hpp"
#include "chromaflux/instance.hpp"
#include "chromaflux/io.hpp"
#include "chromaflux/conflict.hpp"
#include "chromaflux/bounds.hpp"
#include "chromaflux/greedy.hpp"
#include "chromaflux/balanced.hpp"
#include "chromaflux/vizing.hpp"
#include "chromaflux/clustered.hpp"
#include "chromaflux/max_flow.hpp"
#include "chromaflux/migration_even.hpp"
#include "chromaflux/migration_general.hpp"
#include "chromaflux/oracle.hpp"
#include "chromaflux/report.hpp"
