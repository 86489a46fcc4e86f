"""Evaluation task state machines (2D pointing, 3D reach-and-hold)."""

from .arm import (ArmTask, ArmView, TrialRecord3D, build_schedule_3d,
                  mean_completion_time)
from .pointing import (PointingTask, PointingView, TaskError, TrialPlan,
                       TrialRecord2D, build_schedule)
from .targets import (ANGLES_DEG, DISTANCES_PX, SCREEN_SIZE, WIDTHS_PX,
                      TargetSpec2D, TargetSpec3D, generate_target_set_2d,
                      generate_target_set_3d, peripheral_targets_2d,
                      start_sphere_3d)

__all__ = [
    "ANGLES_DEG", "DISTANCES_PX", "SCREEN_SIZE", "WIDTHS_PX",
    "ArmTask", "ArmView", "PointingTask", "PointingView", "TaskError",
    "TargetSpec2D", "TargetSpec3D", "TrialPlan", "TrialRecord2D",
    "TrialRecord3D", "build_schedule", "build_schedule_3d",
    "generate_target_set_2d", "generate_target_set_3d",
    "mean_completion_time", "peripheral_targets_2d", "start_sphere_3d",
]
