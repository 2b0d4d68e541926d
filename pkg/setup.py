from setuptools import setup, find_packages

with open('requirements.txt') as f:
    requirements = [line for line in f.read().splitlines() if line and not line.startswith('#')]

with open('README.md') as f:
    long_description = f.read()

setup(
    name='pydpq',
    version='0.1.0',
    description="Type checker, circuit generator and diagram renderer for Proto-Quipper-D programs",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="The pydpq Authors",
    license="Apache License 2.0",
    packages=find_packages(),
    package_data={
        'pydpq': ['prelude/*.dpq'],
    },
    python_requires='>=3.10',
    install_requires=requirements,
    entry_points={
        'console_scripts': [
            'pydpq = pydpq.cli:main',
        ]
    },
)
