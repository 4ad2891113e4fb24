from src.plants.base import Plant
from src.plants.quadcopter import QuadcopterPlant
from src.plants.rigid_body import RigidBodyPlant
from src.plants.satellite import SatellitePlant
from src.plants.unicycle import UnicyclePlant

__all__ = ["Plant", "QuadcopterPlant", "RigidBodyPlant", "SatellitePlant", "UnicyclePlant"]
