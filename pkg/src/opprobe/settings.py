'''
Runtime defaults, overridable with OPPROBE_* environment variables.
'''
import os

TOLERANCE = 1e-9
PARTITION_TOLERANCE = 1e-12
QUADRATURE_NODES = 32
FD_STEP = 1e-4
POINTS_PER_AXIS = 11
SEED = 0
LOG_LEVEL = 'WARNING'
SCHEMA_VERSION = 'opprobe-report/1'

# how many rational candidates witness placement tries before giving up
WITNESS_CANDIDATES = 4096

if 'OPPROBE_TOLERANCE' in os.environ:
    TOLERANCE = float(os.environ['OPPROBE_TOLERANCE'])

if 'OPPROBE_PARTITION_TOLERANCE' in os.environ:
    PARTITION_TOLERANCE = float(os.environ['OPPROBE_PARTITION_TOLERANCE'])

if 'OPPROBE_QUADRATURE_NODES' in os.environ:
    QUADRATURE_NODES = int(os.environ['OPPROBE_QUADRATURE_NODES'])

if 'OPPROBE_FD_STEP' in os.environ:
    FD_STEP = float(os.environ['OPPROBE_FD_STEP'])

if 'OPPROBE_POINTS_PER_AXIS' in os.environ:
    POINTS_PER_AXIS = int(os.environ['OPPROBE_POINTS_PER_AXIS'])

if 'OPPROBE_SEED' in os.environ:
    SEED = int(os.environ['OPPROBE_SEED'])

if 'OPPROBE_LOG_LEVEL' in os.environ:
    LOG_LEVEL = os.environ['OPPROBE_LOG_LEVEL'].upper()

if 'OPPROBE_WITNESS_CANDIDATES' in os.environ:
    WITNESS_CANDIDATES = int(os.environ['OPPROBE_WITNESS_CANDIDATES'])
