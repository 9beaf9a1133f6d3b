"""Setup configuration for lattice-virasoro."""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="lattice-virasoro",
    version="1.0.0",
    description="Exact discrete complex analysis and Virasoro algebra checks for the lattice Gaussian free field",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy",
        "scipy",
        "mpmath",
        "tqdm",
        "pyyaml",
    ],
    extras_require={
        "test": [
            "pytest",
            "hypothesis",
        ],
    },
    entry_points={
        "console_scripts": [
            "lattice-virasoro=lattice_virasoro.cli:main",
        ],
    },
    package_data={
        "lattice_virasoro": ["config/*.yml"],
    },
)
