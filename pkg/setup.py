from setuptools import find_packages, setup

version_file = 'src/roughbilliards/version.py'


def get_version():
    with open(version_file, 'r') as f:
        exec(compile(f.read(), version_file, 'exec'))
    return locals()['__version__']


base_packages = [
    "numpy >= 1.22",
    "scipy >= 1.9",
    "pydantic >= 1.10",
    "transformers >= 4.0.0",
    "tqdm >= 4.66",
]


dev = [
    "pytest",
    "pytest-cov",
    "flake8",
    "isort",
    "black",
]


setup(
    name="rough-billiards",
    version=get_version(),
    description="Rough reflection laws and rough disk-wall collisions simulated on periodic microstructured walls",
    long_description=open("README.md", "r", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    keywords="billiards rough reflection Markov kernel Monte Carlo rigid body collision",
    license="Apache 2.0 License",
    package_dir={"": "src"},
    packages=find_packages("src"),
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.8.0",
    install_requires=base_packages,
    extras_require={"dev": base_packages + dev},
    entry_points={"console_scripts": ["rough-billiards = roughbilliards.cli:main"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
