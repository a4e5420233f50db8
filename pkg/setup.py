from setuptools import setup, find_packages

setup(
    name="qmap",
    version="0.1",
    packages=find_packages(exclude=["tests"]),
    py_modules=["main"],
    install_requires=[
        'numpy',
        'pydantic',
        'pydantic-settings',
    ],
    entry_points={
        'console_scripts': ['qmap = main:main'],
    },
)
