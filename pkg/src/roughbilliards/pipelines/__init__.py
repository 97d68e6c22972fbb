from . import collide, converge, kernel, knudsen, reflect, verify, wall

SUBCOMMANDS = {
    'wall': wall.main,
    'reflect': reflect.main,
    'kernel': kernel.main,
    'collide': collide.main,
    'converge': converge.main,
    'knudsen': knudsen.main,
    'verify': verify.main,
}
