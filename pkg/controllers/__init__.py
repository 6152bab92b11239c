# Controllers package
# Import all controller modules here to make them available

from . import distance_controller
from . import minimax_controller
from . import bench_controller

__all__ = [
    'distance_controller',
    'minimax_controller',
    'bench_controller',
]
